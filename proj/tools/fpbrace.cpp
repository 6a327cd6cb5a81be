// Command-line front end: construct, validate, verify, classify, enumerate.
// Single JSON object on stdout per invocation; oracle subcommands stream
// JSON lines. Exit codes: 0 success, 1 domain error, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "fpbrace/fpbrace.hpp"

namespace {

using fpbrace::json;

int g_indent = -1;  // --pretty switches to 2

void emit(const json& j) { std::cout << j.dump(g_indent) << "\n"; }

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fpbrace::Error(fpbrace::errc::bad_input, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw fpbrace::Error(fpbrace::errc::bad_input, std::string("parse error: ") + e.what());
  }
  return j;
}

int run_field_info(uint32_t p, uint32_t k) {
  const auto spec = fpbrace::FieldSpec::create(p, k);
  json out = fpbrace::to_json(*spec);
  out["order"] = spec->order();
  out["q"] = fpbrace::to_json(fpbrace::find_nonsquare(spec));
  emit(out);
  return 0;
}

int run_theta_validate(const std::string& file) {
  const auto alg = fpbrace::parse_algebra_spec(load_json(file));
  emit(fpbrace::to_json(fpbrace::validate_defining_matrix(alg.theta)));
  return 0;
}

int run_algebra_verify(const std::string& file, bool exhaustive, bool sampled,
                       uint64_t seed, size_t samples) {
  const auto alg = fpbrace::parse_algebra_spec(load_json(file));
  const uint64_t states = fpbrace::space_size(alg.field, alg.n);

  fpbrace::CheckMode mode = fpbrace::CheckMode::Exhaustive;
  if (sampled || (!exhaustive && states > fpbrace::kMaxExhaustiveStates))
    mode = fpbrace::CheckMode::Sampled;
  fpbrace::CheckOptions opts;
  opts.seed = seed;
  opts.samples = samples;

  const auto sca = fpbrace::StructureConstantAlgebra::from_algebra(alg);
  const auto cand = fpbrace::BraceCandidate::from_structure_constants(sca);

  json out;
  out["theta"] = fpbrace::to_json(fpbrace::validate_defining_matrix(alg.theta));
  out["states"] = states;
  out["left_brace"] = fpbrace::to_json(fpbrace::check_left_brace(cand, mode, opts));
  out["right_brace"] = fpbrace::to_json(fpbrace::check_right_brace(cand, mode, opts));
  out["bibrace"] = fpbrace::to_json(fpbrace::check_bibrace(sca, mode, opts));
  out["gamma_homomorphism"] =
      fpbrace::to_json(fpbrace::gamma_homomorphism_check(alg, mode, opts));
  if (states <= fpbrace::kMaxTableStates) {
    const auto table = fpbrace::build_T_circ(alg);
    out["subgroup"] = fpbrace::to_json(fpbrace::verify_subgroup_properties(table, alg));
  } else {
    out["subgroup"] = nullptr;
  }
  emit(out);
  return 0;
}

int run_classify_one(const std::string& file) {
  auto alg = fpbrace::parse_algebra_spec(load_json(file));
  if (alg.d != 1) alg = fpbrace::quotient_by_complement(alg);
  emit(fpbrace::to_json(fpbrace::class_of(alg)));
  return 0;
}

int run_classify_pair(const std::string& f1, const std::string& f2) {
  auto a1 = fpbrace::parse_algebra_spec(load_json(f1));
  auto a2 = fpbrace::parse_algebra_spec(load_json(f2));
  if (a1.d != 1) a1 = fpbrace::quotient_by_complement(a1);
  if (a2.d != 1) a2 = fpbrace::quotient_by_complement(a2);
  const auto w = fpbrace::iso_test(a1, a2);
  json out;
  out["isomorphic"] = w.has_value();
  out["witness"] = w ? fpbrace::to_json(*w) : json(nullptr);
  emit(out);
  return 0;
}

int run_classify_count(uint32_t p, uint32_t k, size_t n) {
  emit(json{{"p", p}, {"k", k}, {"n", n}, {"count", fpbrace::count_classes(p, k, n)}});
  return 0;
}

int run_classify_reps(uint32_t p, uint32_t k, size_t n) {
  json reps = json::array();
  for (const auto& alg : fpbrace::canonical_representatives(p, k, n))
    reps.push_back(fpbrace::to_json(alg));
  emit(json{{"p", p}, {"k", k}, {"n", n}, {"representatives", reps}});
  return 0;
}

int run_form_diagonalize(const std::string& file) {
  const auto b = fpbrace::parse_matrix(load_json(file));
  const auto dr = fpbrace::congruent_diagonalize(b);
  json out;
  out["transform"] = fpbrace::to_json(dr.transform);
  out["diagonal"] = fpbrace::to_json(dr.diagonal);
  if (!b.det().is_zero()) {
    const auto cf = fpbrace::canonical_form(b);
    out["discriminant"] = fpbrace::to_json(fpbrace::discriminant(b));
    out["canonical"] = json{{"rank", cf.label.rank},
                            {"disc", fpbrace::to_json(cf.label.disc)},
                            {"transform", fpbrace::to_json(cf.transform)},
                            {"form", fpbrace::to_json(cf.form)}};
  } else {
    out["discriminant"] = nullptr;
    out["canonical"] = nullptr;
  }
  emit(out);
  return 0;
}

int run_oracle_classes(uint32_t p, uint32_t k, size_t m, const std::string& via,
                       size_t workers) {
  const auto spec = fpbrace::FieldSpec::create(p, k);
  const auto thetas = fpbrace::enumerate_valid_theta(spec, m);

  // Per-candidate class labels, computed in parallel chunks, streamed in order.
  std::vector<json> lines(thetas.size());
  const size_t nw = std::max<size_t>(1, workers);
  std::vector<std::thread> pool;
  for (size_t w = 0; w < nw; ++w)
    pool.emplace_back([&, w] {
      for (size_t i = w; i < thetas.size(); i += nw) {
        const fpbrace::AlgebraSpec alg(spec, m + 1, 1, thetas[i]);
        lines[i] = json{{"index", i},
                        {"theta", fpbrace::theta_to_json(thetas[i])},
                        {"label", fpbrace::to_json(fpbrace::class_of(alg))}};
      }
    });
  for (auto& t : pool) t.join();
  for (const auto& l : lines) emit(l);

  json summary{{"summary", true}, {"p", p}, {"k", k}, {"m", m},
               {"total", thetas.size()}};
  if (via == "isotest" || via == "both") {
    const auto part = fpbrace::partition_into_classes(spec, thetas,
                                                      fpbrace::PartitionVia::IsoTest);
    summary["classes_isotest"] = part.size();
    json cls = json::array();
    for (const auto& c : part) cls.push_back(c);
    summary["partition"] = cls;
  }
  if (via == "bruteforce" || via == "both") {
    const auto part = fpbrace::partition_into_classes(spec, thetas,
                                                      fpbrace::PartitionVia::BruteForce);
    summary["classes_bruteforce"] = part.size();
  }
  if (via == "both")
    summary["agree"] = summary["classes_isotest"] == summary["classes_bruteforce"];
  summary["count_formula"] = fpbrace::count_classes(p, k, m + 1);
  emit(summary);
  return 0;
}

int run_oracle_subgroups(uint32_t p, size_t n) {
  const auto census = fpbrace::enumerate_regular_subgroups_small(p, n);
  size_t idx = 0, verified = 0, translations = 0;
  for (const auto& entry : census) {
    json line{{"index", idx++},
              {"order", entry.table.size()},
              {"translation_group", entry.is_translation_group},
              {"annihilator_dim", entry.annihilator_dim},
              {"verified", entry.verified}};
    line["theta"] =
        entry.matched_theta ? fpbrace::theta_to_json(*entry.matched_theta) : json(nullptr);
    line["basis_change"] =
        entry.basis_change ? fpbrace::to_json(*entry.basis_change) : json(nullptr);
    emit(line);
    verified += entry.verified;
    translations += entry.is_translation_group;
  }
  emit(json{{"summary", true},
            {"p", p},
            {"n", n},
            {"subgroups", census.size()},
            {"verified", verified},
            {"translation_groups", translations}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radical F_{p^k}-algebras, braces, and their classification"};
  app.require_subcommand(1);
  app.add_flag("--pretty", [](int64_t) { g_indent = 2; }, "indent JSON output");

  uint32_t p = 3, k = 1;
  size_t n = 2, m = 1, workers = 1, samples = 512;
  uint64_t seed = 0;
  std::string file, file2, via = "both";
  bool exhaustive = false, sampled = false;

  auto* field = app.add_subcommand("field", "field layer");
  auto* field_info = field->add_subcommand("info", "chosen modulus and nonsquare");
  field_info->add_option("--p", p, "odd prime")->required();
  field_info->add_option("--k", k, "extension degree")->required();

  auto* theta = app.add_subcommand("theta", "defining matrices");
  auto* theta_validate = theta->add_subcommand("validate", "defining-matrix conditions");
  theta_validate->add_option("file", file, "AlgebraSpec JSON file")->required();

  auto* algebra = app.add_subcommand("algebra", "algebra checks");
  auto* algebra_verify =
      algebra->add_subcommand("verify", "brace/bi-brace/subgroup verdict bundle");
  algebra_verify->add_option("file", file, "AlgebraSpec JSON file")->required();
  algebra_verify->add_flag("--exhaustive", exhaustive, "force exhaustive mode");
  algebra_verify->add_flag("--sampled", sampled, "force sampled mode");
  algebra_verify->add_option("--seed", seed, "sampling seed");
  algebra_verify->add_option("--samples", samples, "sample count");

  auto* classify = app.add_subcommand("classify", "isomorphism classification");
  auto* cls_one = classify->add_subcommand("one", "class label of one algebra");
  cls_one->add_option("file", file, "AlgebraSpec JSON file")->required();
  auto* cls_pair = classify->add_subcommand("pair", "isomorphism test of two algebras");
  cls_pair->add_option("file1", file, "first AlgebraSpec")->required();
  cls_pair->add_option("file2", file2, "second AlgebraSpec")->required();
  auto* cls_count = classify->add_subcommand("count", "closed-form class count");
  cls_count->add_option("--p", p, "odd prime")->required();
  cls_count->add_option("--k", k, "extension degree")->required();
  cls_count->add_option("--n", n, "algebra dimension")->required();
  auto* cls_reps = classify->add_subcommand("reps", "canonical representatives");
  cls_reps->add_option("--p", p, "odd prime")->required();
  cls_reps->add_option("--k", k, "extension degree")->required();
  cls_reps->add_option("--n", n, "algebra dimension")->required();

  auto* form = app.add_subcommand("form", "bilinear forms");
  auto* form_diag = form->add_subcommand("diagonalize", "congruence diagonalization");
  form_diag->add_option("file", file, "matrix JSON file")->required();

  auto* oracle = app.add_subcommand("oracle", "brute-force cross-checks");
  auto* oracle_classes = oracle->add_subcommand("classes", "enumerate and partition");
  oracle_classes->add_option("--p", p, "odd prime")->required();
  oracle_classes->add_option("--k", k, "extension degree")->required();
  oracle_classes->add_option("--m", m, "theta size (n = m+1)")->required();
  oracle_classes->add_option("--via", via, "isotest | bruteforce | both")
      ->check(CLI::IsMember({"isotest", "bruteforce", "both"}));
  oracle_classes->add_option("--workers", workers, "worker threads");
  auto* oracle_subgroups = oracle->add_subcommand("subgroups", "regular subgroup census");
  oracle_subgroups->add_option("--p", p, "odd prime")->required();
  oracle_subgroups->add_option("--n", n, "space dimension")->required();
  oracle_subgroups->add_option("--workers", workers, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (field_info->parsed()) return run_field_info(p, k);
    if (theta_validate->parsed()) return run_theta_validate(file);
    if (algebra_verify->parsed())
      return run_algebra_verify(file, exhaustive, sampled, seed, samples);
    if (cls_one->parsed()) return run_classify_one(file);
    if (cls_pair->parsed()) return run_classify_pair(file, file2);
    if (cls_count->parsed()) return run_classify_count(p, k, n);
    if (cls_reps->parsed()) return run_classify_reps(p, k, n);
    if (form_diag->parsed()) return run_form_diagonalize(file);
    if (oracle_classes->parsed()) return run_oracle_classes(p, k, m, via, workers);
    if (oracle_subgroups->parsed()) return run_oracle_subgroups(p, n);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const fpbrace::Error& e) {
    emit(json{{"error", e.code()}, {"detail", e.what()}});
    return 1;
  } catch (const std::exception& e) {
    emit(json{{"error", "Internal"}, {"detail", e.what()}});
    return 1;
  }
}

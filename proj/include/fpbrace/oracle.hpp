#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fpbrace/classify.hpp"
#include "fpbrace/holomorph.hpp"

// Independent brute-force engines validating the closed-form results:
// exhaustive isomorphism search (block-diagonal and unrestricted shapes),
// defining-matrix enumeration, small-scale regular-subgroup enumeration in
// AGL(n,p), and a Dixon conjugator for regular subgroups.

namespace fpbrace {

namespace detail {

inline double gl_size_estimate(double q, size_t n) {
  double qn = 1;
  for (size_t i = 0; i < n; ++i) qn *= q;
  double total = 1, qi = 1;
  for (size_t i = 0; i < n; ++i) {
    total *= (qn - qi);
    qi *= q;
  }
  return total;
}

// m x m matrices in the index domain of a FieldTable.
using PackedMat = std::vector<uint16_t>;

inline PackedMat pack_matrix(const FieldTable& ft, const MatFp& m) {
  PackedMat p;
  p.reserve(m.rows() * m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) p.push_back(ft.index_of(m.at(i, j)));
  return p;
}

inline MatFp unpack_matrix(const FieldTable& ft, const PackedMat& p, size_t rows,
                           size_t cols) {
  MatFp m(ft.spec(), rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) m.at(i, j) = ft.element(p[i * cols + j]);
  return m;
}

inline bool packed_invertible(const FieldTable& ft, PackedMat m, size_t n) {
  size_t rk = 0;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = rk;
    while (piv < n && m[piv * n + col] == 0) ++piv;
    if (piv == n) return false;
    if (piv != rk)
      for (size_t c = 0; c < n; ++c) std::swap(m[piv * n + c], m[rk * n + c]);
    const uint16_t inv = ft.inv(m[rk * n + col]);
    for (size_t r = rk + 1; r < n; ++r) {
      if (m[r * n + col] == 0) continue;
      const uint16_t f = ft.mul(m[r * n + col], inv);
      for (size_t c = col; c < n; ++c)
        m[r * n + c] = ft.sub(m[r * n + c], ft.mul(f, m[rk * n + c]));
    }
    ++rk;
  }
  return rk == n;
}

}  // namespace detail

// Exhaustive scan over all (A, l): entries of A run through the canonical
// odometer (entry (0,0) least significant), l through {1, q}; the first pair
// with A Theta^1 A^T = l Theta^2 wins. The relation forces A invertible.
inline std::optional<IsoWitness> brute_force_iso_blockdiag(const AlgebraSpec& alg1,
                                                           const AlgebraSpec& alg2) {
  require_comparable(alg1, alg2);
  const MatFp t1 = alg1.theta.scalar_matrix();
  const MatFp t2 = alg2.theta.scalar_matrix();
  if (t1.det().is_zero() || t2.det().is_zero())
    throw Error(errc::degenerate_form, "defining matrix is singular");
  const size_t m = alg1.m();
  const FieldTable ft(alg1.field);
  const uint32_t q = ft.order();
  double space = 2;
  for (size_t i = 0; i < m * m; ++i) space *= q;
  if (space > 2e7) throw Error(errc::search_space_too_large, "blockdiag scan infeasible");

  const detail::PackedMat p1 = detail::pack_matrix(ft, t1);
  const detail::PackedMat p2 = detail::pack_matrix(ft, t2);
  const uint16_t qidx = static_cast<uint16_t>(find_nonsquare(alg1.field).index());
  const std::array<uint16_t, 2> lcands = {1, qidx};

  std::vector<uint16_t> a(m * m, 0);
  std::vector<uint16_t> tmp(m * m), rel(m * m);
  while (true) {
    // rel = A Theta^1 A^T
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) {
        uint16_t acc = 0;
        for (size_t k = 0; k < m; ++k)
          if (a[i * m + k] != 0) acc = ft.add(acc, ft.mul(a[i * m + k], p1[k * m + j]));
        tmp[i * m + j] = acc;
      }
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) {
        uint16_t acc = 0;
        for (size_t k = 0; k < m; ++k)
          if (tmp[i * m + k] != 0) acc = ft.add(acc, ft.mul(tmp[i * m + k], a[j * m + k]));
        rel[i * m + j] = acc;
      }
    for (uint16_t l : lcands) {
      bool ok = true;
      for (size_t i = 0; i < m * m && ok; ++i) ok = rel[i] == ft.mul(l, p2[i]);
      if (ok)
        return IsoWitness{detail::unpack_matrix(ft, a, m, m), ft.element(l)};
    }
    size_t pos = 0;
    while (pos < m * m && ++a[pos] == q) a[pos++] = 0;
    if (pos == m * m) break;
  }
  return std::nullopt;
}

// Exhaustive scan for a linear bijection F with F(x .1 y) = F(x) .2 F(y).
// Rows of F are assigned annihilator rows first, then the rest, each row
// running through the canonical vector order; multiplicativity constraints
// prune prefixes, which does not change which full assignment is found
// first. Returns F as an n x n matrix.
inline std::optional<MatFp> brute_force_iso_unrestricted(const AlgebraSpec& alg1,
                                                         const AlgebraSpec& alg2) {
  require_same_spec(alg1.field, alg2.field);
  if (alg1.n != alg2.n || alg1.d != alg2.d)
    throw Error(errc::dimension_mismatch, "algebra shapes differ");
  const size_t n = alg1.n, d = alg1.d, m = alg1.m();
  const FieldTable ft(alg1.field);
  const uint32_t q = ft.order();
  if (detail::gl_size_estimate(q, n) > 2e6)
    throw Error(errc::search_space_too_large, "unrestricted scan infeasible");

  // theta tables in index domain
  auto theta_idx = [&](const AlgebraSpec& alg, size_t i, size_t j, size_t t) {
    return static_cast<uint16_t>(alg.theta.entry(i, j, t).index());
  };

  // Row assignment order: m, m+1, ..., n-1, then 0, ..., m-1.
  std::vector<size_t> order;
  for (size_t r = m; r < n; ++r) order.push_back(r);
  for (size_t r = 0; r < m; ++r) order.push_back(r);
  std::vector<size_t> pos(n);
  for (size_t i = 0; i < n; ++i) pos[order[i]] = i;

  // Pair (i,j) becomes checkable at depth: rows i and j assigned, plus all
  // annihilator rows when e_i .1 e_j is nonzero.
  std::vector<std::vector<std::pair<size_t, size_t>>> schedule(n + 1);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      size_t need = std::max(pos[i], pos[j]) + 1;
      if (i < m && j < m) {
        bool nonzero = false;
        for (size_t t = 0; t < d; ++t)
          if (theta_idx(alg1, i, j, t) != 0) nonzero = true;
        if (nonzero) need = std::max(need, d);
      }
      schedule[need].push_back({i, j});
    }

  std::vector<std::vector<uint16_t>> rows(n, std::vector<uint16_t>(n, 0));
  const uint64_t row_space = space_size(alg1.field, n);

  // F(e_i .1 e_j) and F(e_i) .2 F(e_j), in coordinates.
  std::vector<uint16_t> lhs(n), rhs(n);
  auto pair_ok = [&](size_t i, size_t j) {
    for (size_t c = 0; c < n; ++c) {
      uint16_t acc = 0;
      if (i < m && j < m)
        for (size_t t = 0; t < d; ++t) {
          const uint16_t coef = theta_idx(alg1, i, j, t);
          if (coef != 0) acc = ft.add(acc, ft.mul(coef, rows[m + t][c]));
        }
      lhs[c] = acc;
    }
    for (size_t c = 0; c < n; ++c) rhs[c] = 0;
    for (size_t u = 0; u < m; ++u) {
      if (rows[i][u] == 0) continue;
      for (size_t v = 0; v < m; ++v) {
        if (rows[j][v] == 0) continue;
        const uint16_t f = ft.mul(rows[i][u], rows[j][v]);
        for (size_t t = 0; t < d; ++t) {
          const uint16_t coef = theta_idx(alg2, u, v, t);
          if (coef != 0) rhs[m + t] = ft.add(rhs[m + t], ft.mul(f, coef));
        }
      }
    }
    return lhs == rhs;
  };

  std::optional<MatFp> found;
  auto dfs = [&](auto&& self, size_t depth) -> bool {
    if (depth == n) {
      detail::PackedMat flat(n * n);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) flat[i * n + j] = rows[i][j];
      if (!detail::packed_invertible(ft, flat, n)) return false;
      found = detail::unpack_matrix(ft, flat, n, n);
      return true;
    }
    const size_t r = order[depth];
    for (uint64_t idx = 0; idx < row_space; ++idx) {
      uint64_t t = idx;
      for (size_t c = 0; c < n; ++c) {
        rows[r][c] = static_cast<uint16_t>(t % q);
        t /= q;
      }
      bool ok = true;
      for (const auto& [i, j] : schedule[depth + 1])
        if (!pair_ok(i, j)) {
          ok = false;
          break;
        }
      if (ok && self(self, depth + 1)) return true;
    }
    return false;
  };
  dfs(dfs, 0);
  return found;
}

// All valid d = 1 defining matrices: symmetric and invertible, listed in the
// canonical odometer order over the upper-triangle entries.
inline std::vector<DefiningMatrix> enumerate_valid_theta(const FieldSpecPtr& spec,
                                                         size_t m) {
  const FieldTable ft(spec);
  const uint32_t q = ft.order();
  const size_t free_cells = m * (m + 1) / 2;
  double space = 1;
  for (size_t i = 0; i < free_cells; ++i) space *= q;
  if (space > 2e6) throw Error(errc::search_space_too_large, "theta enumeration infeasible");

  std::vector<std::pair<size_t, size_t>> cells;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i; j < m; ++j) cells.push_back({i, j});

  std::vector<DefiningMatrix> out;
  std::vector<uint16_t> digits(free_cells, 0);
  detail::PackedMat t(m * m);
  while (true) {
    for (size_t c = 0; c < free_cells; ++c) {
      const auto [i, j] = cells[c];
      t[i * m + j] = digits[c];
      t[j * m + i] = digits[c];
    }
    if (detail::packed_invertible(ft, t, m)) {
      DefiningMatrix theta(spec, m, 1);
      for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) theta.entry(i, j, 0) = ft.element(t[i * m + j]);
      out.push_back(std::move(theta));
    }
    size_t posn = 0;
    while (posn < free_cells && ++digits[posn] == q) digits[posn++] = 0;
    if (posn == free_cells) break;
  }
  return out;
}

enum class PartitionVia { IsoTest, BruteForce };

// Greedy union into classes: each theta joins the first existing class whose
// representative it is isomorphic to, in enumeration order.
inline std::vector<std::vector<size_t>> partition_into_classes(
    const FieldSpecPtr& spec, const std::vector<DefiningMatrix>& thetas,
    PartitionVia via) {
  std::vector<std::vector<size_t>> classes;
  std::vector<AlgebraSpec> algs;
  algs.reserve(thetas.size());
  for (const auto& t : thetas)
    algs.push_back(AlgebraSpec(spec, t.m() + 1, 1, t));
  for (size_t i = 0; i < algs.size(); ++i) {
    bool placed = false;
    for (auto& cls : classes) {
      const AlgebraSpec& rep = algs[cls.front()];
      const bool iso = via == PartitionVia::IsoTest
                           ? iso_test(algs[i], rep).has_value()
                           : brute_force_iso_blockdiag(algs[i], rep).has_value();
      if (iso) {
        cls.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({i});
  }
  return classes;
}

// ---------------------------------------------------------------------------
// Regular-subgroup enumeration in AGL(n,p), p^n <= 27.
// ---------------------------------------------------------------------------

struct SubgroupCensusEntry {
  SubgroupTable table;
  bool is_translation_group = false;
  // For non-translation subgroups: the defining matrix recovered after a
  // change of basis aligning the annihilator, and that basis change (rows =
  // new basis vectors; x_old = y_new * P).
  std::optional<DefiningMatrix> matched_theta;
  std::optional<MatFp> basis_change;
  size_t annihilator_dim = 0;
  bool verified = false;
};

namespace detail {

// Affine maps over the prime field in digit form; used only by the subgroup
// search, where p^n <= 27 keeps everything tiny.
struct SmallAff {
  std::vector<uint8_t> lin;  // n*n
  std::vector<uint8_t> tr;   // n

  bool operator==(const SmallAff& o) const { return lin == o.lin && tr == o.tr; }
  bool operator<(const SmallAff& o) const {
    return lin != o.lin ? lin < o.lin : tr < o.tr;
  }
};

struct SmallCtx {
  uint32_t p;
  size_t n;
  uint64_t N;  // p^n

  uint64_t encode(const SmallAff& a) const {
    uint64_t v = 0;
    for (size_t i = a.lin.size(); i-- > 0;) v = v * 32 + a.lin[i];
    for (size_t i = a.tr.size(); i-- > 0;) v = v * 32 + a.tr[i];
    return v;
  }

  SmallAff compose(const SmallAff& f, const SmallAff& g) const {
    SmallAff r;
    r.lin.assign(n * n, 0);
    r.tr.assign(n, 0);
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k) {
        if (f.lin[i * n + k] == 0) continue;
        for (size_t j = 0; j < n; ++j)
          r.lin[i * n + j] = static_cast<uint8_t>(
              (r.lin[i * n + j] + f.lin[i * n + k] * g.lin[k * n + j]) % p);
      }
    for (size_t j = 0; j < n; ++j) {
      uint32_t acc = g.tr[j];
      for (size_t i = 0; i < n; ++i) acc += f.tr[i] * g.lin[i * n + j];
      r.tr[j] = static_cast<uint8_t>(acc % p);
    }
    return r;
  }

  SmallAff identity() const {
    SmallAff r;
    r.lin.assign(n * n, 0);
    r.tr.assign(n, 0);
    for (size_t i = 0; i < n; ++i) r.lin[i * n + i] = 1;
    return r;
  }

  bool is_identity(const SmallAff& a) const { return a == identity(); }

  uint64_t label(const SmallAff& a) const {
    uint64_t v = 0;
    for (size_t i = n; i-- > 0;) v = v * p + a.tr[i];
    return v;
  }
};

}  // namespace detail

// Enumerates every subgroup of AGL(n,p) that is elementary abelian of order
// p^n, regular on V, and normalized by T_+. Generators are sigma-conjugation
// families {(L, v + b(1-L)) : b in V}; unions of families are exactly the
// T_+-normalized subsets, so a breadth-first closure over families visits
// every candidate. Each non-translation subgroup is then matched to a
// defining matrix after a change of basis aligning its annihilator.
inline std::vector<SubgroupCensusEntry> enumerate_regular_subgroups_small(uint32_t p,
                                                                          size_t n) {
  if (p == 2) throw Error(errc::even_characteristic, "p must be odd");
  if (!detail::is_prime(p)) throw Error(errc::not_prime, "p = " + std::to_string(p));
  uint64_t N = 1;
  for (size_t i = 0; i < n; ++i) N *= p;
  if (N > 27) throw Error(errc::search_space_too_large, "p^n exceeds 27");

  detail::SmallCtx ctx{p, n, N};

  // Orbit of (L,v) under sigma-conjugation: {(L, v + b(1-L)) : b in V}.
  auto family_of = [&](const detail::SmallAff& el) {
    std::vector<detail::SmallAff> fam;
    std::set<uint64_t> seen;
    for (uint64_t bi = 0; bi < N; ++bi) {
      detail::SmallAff moved = el;
      uint64_t bb = bi;
      std::vector<uint8_t> b(n);
      for (size_t i = 0; i < n; ++i) {
        b[i] = static_cast<uint8_t>(bb % p);
        bb /= p;
      }
      for (size_t j = 0; j < n; ++j) {
        uint32_t bl = 0;
        for (size_t i = 0; i < n; ++i) bl += b[i] * el.lin[i * n + j];
        const uint32_t delta = (b[j] + p * p * 32 - bl % p) % p;
        moved.tr[j] = static_cast<uint8_t>((el.tr[j] + delta) % p);
      }
      if (seen.insert(ctx.encode(moved)).second) fam.push_back(moved);
    }
    std::sort(fam.begin(), fam.end());
    return fam;
  };

  // Candidate linear parts: L^p = 1 forces L unipotent over F_p; the
  // translation must satisfy (L,v)^p = 1. Families are keyed by their
  // minimal element.
  std::vector<std::vector<detail::SmallAff>> families;
  std::set<uint64_t> family_keys;
  uint64_t mat_count = 1;
  for (size_t i = 0; i < n * n; ++i) mat_count *= p;
  for (uint64_t mi = 0; mi < mat_count; ++mi) {
    detail::SmallAff cand;
    cand.lin.assign(n * n, 0);
    cand.tr.assign(n, 0);
    uint64_t t = mi;
    for (size_t i = 0; i < n * n; ++i) {
      cand.lin[i] = static_cast<uint8_t>(t % p);
      t /= p;
    }
    detail::SmallAff acc = cand;
    for (uint32_t e = 1; e < p; ++e) acc = ctx.compose(acc, cand);
    bool order_p = true;
    for (size_t i = 0; i < n && order_p; ++i)
      for (size_t j = 0; j < n; ++j)
        if (acc.lin[i * n + j] != (i == j ? 1 : 0)) {
          order_p = false;
          break;
        }
    if (!order_p) continue;
    for (uint64_t vi = 0; vi < N; ++vi) {
      detail::SmallAff el = cand;
      uint64_t vv = vi;
      for (size_t i = 0; i < n; ++i) {
        el.tr[i] = static_cast<uint8_t>(vv % p);
        vv /= p;
      }
      if (ctx.is_identity(el)) continue;
      detail::SmallAff pw = el;
      for (uint32_t e = 1; e < p; ++e) pw = ctx.compose(pw, el);
      if (!ctx.is_identity(pw)) continue;
      auto fam = family_of(el);
      if (family_keys.insert(ctx.encode(fam.front())).second)
        families.push_back(std::move(fam));
    }
  }
  std::sort(families.begin(), families.end(),
            [&](const auto& a, const auto& b) { return a.front() < b.front(); });

  // Closure under composition; reject early on label collisions,
  // non-commuting pairs, or overflow past p^n elements.
  auto close = [&](std::vector<detail::SmallAff> gens)
      -> std::optional<std::vector<detail::SmallAff>> {
    std::map<uint64_t, detail::SmallAff> elems;
    std::set<uint64_t> labels;
    std::vector<detail::SmallAff> work = std::move(gens);
    elems.emplace(ctx.encode(ctx.identity()), ctx.identity());
    labels.insert(0);
    while (!work.empty()) {
      detail::SmallAff cur = std::move(work.back());
      work.pop_back();
      const uint64_t key = ctx.encode(cur);
      if (elems.count(key)) continue;
      if (!labels.insert(ctx.label(cur)).second) return std::nullopt;
      elems.emplace(key, cur);
      if (elems.size() > N) return std::nullopt;
      for (const auto& [k2, other] : elems) {
        const detail::SmallAff fg = ctx.compose(cur, other);
        if (!(fg == ctx.compose(other, cur))) return std::nullopt;
        work.push_back(fg);
      }
    }
    std::vector<detail::SmallAff> out;
    out.reserve(elems.size());
    for (auto& [k, e] : elems) out.push_back(e);
    return out;
  };

  // Depth-first closure over family unions; explicit additions follow
  // ascending family order, so every target subgroup is reached along its
  // sorted family list and permuted duplicates are skipped.
  std::set<std::vector<uint64_t>> seen_subgroups;
  std::vector<std::vector<detail::SmallAff>> complete;
  std::vector<std::pair<std::vector<detail::SmallAff>, size_t>> queue;
  queue.push_back({{ctx.identity()}, 0});
  std::set<std::vector<uint64_t>> visited;
  while (!queue.empty()) {
    auto [sub, next] = std::move(queue.back());
    queue.pop_back();
    std::set<uint64_t> sub_keys;
    for (const auto& e : sub) sub_keys.insert(ctx.encode(e));
    for (size_t fi = next; fi < families.size(); ++fi) {
      const auto& fam = families[fi];
      if (sub_keys.count(ctx.encode(fam.front()))) continue;
      // cheap prechecks before closing
      bool compatible = true;
      for (const auto& fe : fam) {
        for (const auto& se : sub)
          if (!(ctx.compose(fe, se) == ctx.compose(se, fe)) ||
              (ctx.label(fe) == ctx.label(se) && !(fe == se))) {
            compatible = false;
            break;
          }
        if (!compatible) break;
      }
      if (!compatible) continue;
      std::vector<detail::SmallAff> gens = sub;
      gens.insert(gens.end(), fam.begin(), fam.end());
      auto closed = close(std::move(gens));
      if (!closed) continue;
      std::vector<uint64_t> key;
      key.reserve(closed->size());
      for (const auto& e : *closed) key.push_back(ctx.encode(e));
      std::sort(key.begin(), key.end());
      if (closed->size() == N) {
        if (seen_subgroups.insert(key).second) complete.push_back(*closed);
        continue;
      }
      if (visited.insert(key).second) queue.push_back({std::move(*closed), fi + 1});
    }
  }

  // Sort the census canonically by element keys.
  std::vector<std::pair<std::vector<uint64_t>, std::vector<detail::SmallAff>>> sorted;
  for (auto& s : complete) {
    std::vector<uint64_t> key;
    for (const auto& e : s) key.push_back(ctx.encode(e));
    std::sort(key.begin(), key.end());
    sorted.push_back({std::move(key), std::move(s)});
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  // Convert to SubgroupTables and match each to a defining matrix.
  const FieldSpecPtr spec = FieldSpec::create(p, 1);
  std::vector<SubgroupCensusEntry> census;
  for (auto& [key, elems] : sorted) {
    std::vector<AffineMap> maps(N, AffineMap::identity(spec, n));
    for (const auto& e : elems) {
      MatFp lin(spec, n, n);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          lin.at(i, j) = FieldElement::from_int(spec, e.lin[i * n + j]);
      Vec tr;
      for (size_t i = 0; i < n; ++i) tr.push_back(FieldElement::from_int(spec, e.tr[i]));
      maps[ctx.label(e)] = AffineMap(std::move(lin), std::move(tr));
    }
    SubgroupCensusEntry entry{SubgroupTable(spec, n, std::move(maps))};

    // Labels whose map is a pure translation form the annihilator.
    std::vector<Vec> ann_labels;
    const MatFp id = MatFp::identity(spec, n);
    for (uint64_t i = 0; i < N; ++i)
      if (entry.table.at(i).linear() == id) ann_labels.push_back(entry.table.label_of(i));
    auto ann_basis = detail::span_basis(spec, n, ann_labels);
    entry.annihilator_dim = ann_basis.size();

    if (ann_basis.size() == n) {
      entry.is_translation_group = true;
      entry.verified = entry.table == translation_table(spec, n);
      census.push_back(std::move(entry));
      continue;
    }

    // Basis change: standard vectors independent of the annihilator first,
    // annihilator basis last. x_old = y_new * P.
    const size_t dsub = ann_basis.size();
    const size_t msub = n - dsub;
    std::vector<Vec> rows;
    for (size_t i = 0; i < n && rows.size() < msub; ++i) {
      std::vector<Vec> trial = rows;
      trial.push_back(basis_vec(spec, n, i));
      for (const auto& b : ann_basis) trial.push_back(b);
      if (detail::span_basis(spec, n, trial).size() == rows.size() + dsub + 1)
        rows.push_back(basis_vec(spec, n, i));
    }
    for (const auto& b : ann_basis) rows.push_back(b);
    MatFp pmat = MatFp::from_rows(spec, rows);
    MatFp pinv = pmat.inverse();

    // Product read off the table: a.b = a tau_b - a - b, in new coordinates.
    DefiningMatrix theta(spec, msub, dsub);
    bool ok = true;
    for (size_t i = 0; i < msub && ok; ++i)
      for (size_t j = 0; j < msub && ok; ++j) {
        const Vec u = pmat.row(i), w = pmat.row(j);
        const Vec prod_old = vec_sub(vec_sub(entry.table.at_label(w)(u), u), w);
        const Vec prod_new = prod_old * pinv;
        for (size_t c = 0; c < msub; ++c)
          if (!prod_new[c].is_zero()) ok = false;  // must land in the annihilator
        for (size_t t = 0; t < dsub; ++t) theta.entry(i, j, t) = prod_new[msub + t];
      }
    if (ok && validate_defining_matrix(theta).valid()) {
      const AlgebraSpec alg(spec, n, dsub, theta);
      const SubgroupTable reference = build_T_circ(alg);
      bool match = true;
      for (uint64_t yi = 0; yi < N && match; ++yi) {
        const Vec y = entry.table.label_of(yi);
        const AffineMap& ref = reference.at(yi);
        const AffineMap conj(pinv * ref.linear() * pmat, ref.translation() * pmat);
        match = entry.table.at_label(y * pmat) == conj;
      }
      entry.verified = match;
      entry.matched_theta = std::move(theta);
      entry.basis_change = std::move(pmat);
    }
    census.push_back(std::move(entry));
  }
  return census;
}

// ---------------------------------------------------------------------------
// Dixon conjugator.
// ---------------------------------------------------------------------------

// Builds g in Sym(V) with g^{-1} t1 g = t2 from an abstract isomorphism of
// the two regular groups via the base-point labelling g(0 phi) = 0 alpha(phi).
// Both inputs must be elementary abelian of the same order.
inline std::vector<uint32_t> dixon_conjugator(const SubgroupTable& t1,
                                              const SubgroupTable& t2) {
  if (t1.size() != t2.size() || t1.n() != t2.n() || *t1.field() != *t2.field())
    throw Error(errc::not_isomorphic, "tables act on different sets");
  const uint64_t N = t1.size();
  if (N > 27) throw Error(errc::search_space_too_large, "|V| exceeds 27");
  const uint32_t p = t1.field()->p();

  // Permutation form of every element.
  auto perms = [&](const SubgroupTable& t) {
    std::vector<std::vector<uint32_t>> ps(N, std::vector<uint32_t>(N));
    for (uint64_t e = 0; e < N; ++e)
      for (uint64_t x = 0; x < N; ++x)
        ps[e][x] = static_cast<uint32_t>(vec_index(t.at(e)(t.label_of(x))));
    return ps;
  };
  const auto p1 = perms(t1), p2 = perms(t2);

  auto is_elem_abelian = [&](const std::vector<std::vector<uint32_t>>& ps) {
    for (uint64_t a = 0; a < N; ++a)
      for (uint64_t b = a + 1; b < N; ++b)
        for (uint64_t x = 0; x < N; ++x)
          if (ps[a][ps[b][x]] != ps[b][ps[a][x]]) return false;
    for (uint64_t a = 0; a < N; ++a) {
      std::vector<uint32_t> cur(N);
      for (uint64_t i = 0; i < N; ++i) cur[i] = static_cast<uint32_t>(i);
      for (uint32_t e = 0; e < p; ++e) {
        std::vector<uint32_t> nxt(N);
        for (uint64_t i = 0; i < N; ++i) nxt[i] = ps[a][cur[i]];
        cur = std::move(nxt);
      }
      for (uint64_t i = 0; i < N; ++i)
        if (cur[i] != i) return false;
    }
    return true;
  };
  if (!is_elem_abelian(p1) || !is_elem_abelian(p2))
    throw Error(errc::not_isomorphic, "tables are not elementary abelian");

  // Greedy F_p-basis with coordinates, tracked through the regular labelling:
  // the element labelled a is determined by a, so work on labels.
  struct Basis {
    std::vector<uint64_t> gens;                 // labels of basis elements
    std::map<uint64_t, std::vector<uint32_t>> coords;  // label -> coordinates
  };
  auto build_basis = [&](const std::vector<std::vector<uint32_t>>& ps) {
    Basis b;
    b.coords[0] = {};
    for (uint64_t a = 1; a < N; ++a) {
      if (b.coords.count(a)) continue;
      // extend every known element by powers of a
      std::map<uint64_t, std::vector<uint32_t>> next = b.coords;
      for (const auto& [lbl, cs] : b.coords) {
        uint64_t cur = lbl;
        for (uint32_t e = 1; e < p; ++e) {
          cur = ps[a][cur];
          auto cs2 = cs;
          cs2.resize(b.gens.size() + 1, 0);
          cs2[b.gens.size()] = e;
          next[cur] = cs2;
        }
      }
      for (auto& [lbl, cs] : next) cs.resize(b.gens.size() + 1, 0);
      b.gens.push_back(a);
      b.coords = std::move(next);
    }
    return b;
  };
  const Basis b1 = build_basis(p1);
  const Basis b2 = build_basis(p2);
  if (b1.gens.size() != b2.gens.size())
    throw Error(errc::not_isomorphic, "rank mismatch");

  // alpha maps the element labelled a to prod of t2-generators with the same
  // coordinates; g(a) = label of alpha(element labelled a) = image of 0.
  std::vector<uint32_t> g(N);
  for (uint64_t a = 0; a < N; ++a) {
    const auto& cs = b1.coords.at(a);
    uint64_t img = 0;  // apply the t2-element with these coordinates to 0
    for (size_t gi = 0; gi < cs.size(); ++gi)
      for (uint32_t e = 0; e < cs[gi]; ++e) img = p2[b2.gens[gi]][img];
    g[a] = static_cast<uint32_t>(img);
  }

  // alpha itself, label domain: alpha(element labelled a) is the t2-element
  // labelled g(a) (both send 0 the same way by construction).
  std::vector<uint32_t> ginv(N);
  for (uint64_t a = 0; a < N; ++a) ginv[g[a]] = static_cast<uint32_t>(a);
  for (uint64_t a = 0; a < N; ++a)
    for (uint64_t x = 0; x < N; ++x)
      if (g[p1[a][ginv[x]]] != p2[g[a]][x])
        throw Error(errc::verification_failed, "conjugation check failed");
  return g;
}

}  // namespace fpbrace

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fpbrace {

// Domain error with a stable machine-readable code ("DivisionByZero",
// "SpecMismatch", ...). The CLI maps code/detail onto its JSON error object.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

namespace errc {
inline constexpr const char* even_characteristic = "EvenCharacteristic";
inline constexpr const char* not_prime = "NotPrime";
inline constexpr const char* bad_modulus = "BadModulus";
inline constexpr const char* spec_mismatch = "SpecMismatch";
inline constexpr const char* division_by_zero = "DivisionByZero";
inline constexpr const char* zero_input = "ZeroInput";
inline constexpr const char* not_a_square = "NotASquare";
inline constexpr const char* dimension_mismatch = "DimensionMismatch";
inline constexpr const char* singular_matrix = "SingularMatrix";
inline constexpr const char* not_symmetric = "NotSymmetric";
inline constexpr const char* degenerate_form = "DegenerateForm";
inline constexpr const char* product_not_one_dimensional = "ProductNotOneDimensional";
inline constexpr const char* too_large_for_exhaustive = "TooLargeForExhaustive";
inline constexpr const char* too_large = "TooLarge";
inline constexpr const char* identity_mismatch = "IdentityMismatch";
inline constexpr const char* unsupported_d = "UnsupportedD";
inline constexpr const char* search_space_too_large = "SearchSpaceTooLarge";
inline constexpr const char* not_isomorphic = "NotIsomorphic";
inline constexpr const char* verification_failed = "VerificationFailed";
inline constexpr const char* bad_input = "BadInput";
}  // namespace errc

}  // namespace fpbrace

#pragma once

// Linear algebra over F = F_q(t) inside F_q((t)): determinants, inverses and
// the Cartan (K t_lambda K) and Iwasawa (U t_mu K) decompositions, where
// K = GL_n(o), U is upper unitriangular and t_lambda = diag(t^-lambda_i).

#include "weylwalk/matrix.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace weylwalk {

RationalFunction determinant(const RationalFunctionMatrix& m);
LaurentPolynomial determinant(const LaurentMatrix& m);
// Gauss-Jordan; throws std::domain_error when m is singular.
RationalFunctionMatrix inverse(const RationalFunctionMatrix& m);

RationalFunctionMatrix to_rational(const LaurentMatrix& m);
// Throws std::invalid_argument if some entry has a denominator that is not a power of t.
LaurentMatrix to_laurent(const RationalFunctionMatrix& m);

// diag(t^-lambda_1, ..., t^-lambda_n)
RationalFunctionMatrix translation_matrix(int q, std::span<const std::int64_t> lambda);
LaurentMatrix translation_laurent(int q, std::span<const std::int64_t> lambda);

// Entries in o and determinant a unit of o.
bool in_maximal_compact(const RationalFunctionMatrix& m);
bool is_upper_unitriangular(const RationalFunctionMatrix& m);

// M = k1 * t_lambda * k2 with k1, k2 in K and lambda_1 >= ... >= lambda_n.
struct CartanDecomposition {
  std::vector<std::int64_t> lambda;
  RationalFunctionMatrix k1;
  RationalFunctionMatrix k2;
};

// Pivots on a globally minimal-valuation entry (ties: smallest row, then
// column) and clears its row and column with integral coefficients.
CartanDecomposition cartan_decomposition(const RationalFunctionMatrix& m);
std::vector<std::int64_t> smith_valuations(const RationalFunctionMatrix& m);

// Same invariants for a Laurent matrix, computed from the valuations of the
// determinantal divisors (minimal valuations of k x k minors). Minors are
// evaluated lazily in a window above their valuation lower bound, so the
// cost tracks cancellation depth rather than the degree of the entries.
std::vector<std::int64_t> smith_valuations(const LaurentMatrix& m);

// M = u * t_mu * k with u upper unitriangular over F and k in K.
struct IwasawaDecomposition {
  std::vector<std::int64_t> mu;
  RationalFunctionMatrix u;
  RationalFunctionMatrix k;
};

IwasawaDecomposition iwasawa_decomposition(const RationalFunctionMatrix& m);
std::vector<std::int64_t> iwasawa_valuations(const RationalFunctionMatrix& m);

// Parses entries such as "(t^2+1)/t", "t^-2", "3*t+1" or "2t^3 - t" over F_q.
// Throws std::invalid_argument on malformed input.
RationalFunction parse_entry(std::string_view text, int q);
RationalFunctionMatrix parse_matrix(const std::vector<std::vector<std::string>>& rows, int q);

}  // namespace weylwalk

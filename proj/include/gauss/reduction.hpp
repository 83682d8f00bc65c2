#pragma once

#include "gauss/forms.hpp"

#include <optional>
#include <vector>

namespace gauss {

/*
 * A run of contiguous steps ending in a reduced form.
 * chain[0] is the input and chain.back() == result. b_sequence holds the
 * middle coefficient chosen at each step (so it is one shorter than chain),
 * steps[i] carries chain[i] to chain[i+1] and total is their product.
 */
struct ReductionTrace {
    std::vector<QuadraticForm> chain;
    std::vector<Int> b_sequence;
    std::vector<UnimodularMap> steps;
    UnimodularMap total;
    QuadraticForm result;
};

/// Cycle of reduced forms of a positive non-square determinant.
struct Period {
    std::vector<QuadraticForm> forms;
    std::size_t length() const { return forms.size(); }
};

enum class EnumerationMethod { residues = 1, factor_pairs = 2 };

/// 2|b| <= |a| <= |c| with a and c of one sign.
bool is_reduced_negative(const QuadraticForm & f);
ReductionTrace reduce_negative(const QuadraticForm & f);

/// 0 < b < sqrt(D) and sqrt(D) - b < |a| < sqrt(D) + b, tested without roots.
bool is_reduced_positive(const QuadraticForm & f);
ReductionTrace reduce_positive(const QuadraticForm & f);

/// Dispatches on the sign of the determinant.
ReductionTrace reduce(const QuadraticForm & f);

std::vector<QuadraticForm> enumerate_reduced_negative(const Int & d,
                                                      EnumerationMethod method = EnumerationMethod::residues);
std::vector<QuadraticForm> enumerate_reduced_positive(const Int & d);

/// The reduced form contiguous to f by its last part.
QuadraticForm neighbor(const QuadraticForm & f);
/// The step map with transform(f, neighbor_map(f)) == neighbor(f).
UnimodularMap neighbor_map(const QuadraticForm & f);

Period period(const QuadraticForm & f);

/// Some T with det T = 1 and transform(f1, T) == f2, if one exists.
std::optional<UnimodularMap> equivalence_map(const QuadraticForm & f1, const QuadraticForm & f2);
bool properly_equivalent(const QuadraticForm & f1, const QuadraticForm & f2);

UnimodularMap inverse(const UnimodularMap & t);

}  // namespace gauss

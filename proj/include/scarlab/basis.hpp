#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "scarlab/errors.hpp"

namespace scarlab {

enum class Boundary { open, periodic };

/// Occupation word: site i lives in bit i, so the least significant bit is
/// site 0. Printed strings follow binary convention (site L-1 leftmost).
using word_t = std::uint64_t;

using big_int = boost::multiprecision::cpp_int;

struct Configuration {
    word_t bits = 0;
    int length = 0;
};

/// True iff `bits` has no adjacent excitations for the given chain.
/// Periodic chains additionally forbid simultaneous occupation of sites 0
/// and L-1 (the wrap bond); a single periodic site has no neighbor.
bool blockade_ok(word_t bits, int length, Boundary bc);

/// Number of blockaded configurations, by linear recurrence (exact integer).
/// Works far beyond enumerable sizes.
big_int dimension(int length, Boundary bc);

std::string config_to_string(word_t bits, int length);

/// Ordered set of occupation words closed under an on-site constraint,
/// with an exact word -> ordinal map.
///
/// States are stored ascending by word value. The index map is a perfect
/// lookup table up to `lookup_table_max_sites` sites and a binary search on
/// the sorted array beyond that.
class ConstrainedBasis {
public:
    static constexpr int lookup_table_max_sites = 24;

    /// Enumerate the Rydberg-blockaded chain (no adjacent excitations).
    static ConstrainedBasis rydberg(int length, Boundary bc,
                                    std::size_t max_states = default_max_states);

    /// Enumerate the unconstrained chain (all 2^L words). Used by the
    /// embedding constructions that operate on a full spin space.
    static ConstrainedBasis spin_chain(int length, Boundary bc = Boundary::open,
                                       std::size_t max_states = default_max_states);

    int length() const { return length_; }
    Boundary boundary() const { return bc_; }
    bool blockaded() const { return blockaded_; }
    std::size_t size() const { return states_.size(); }

    word_t state(std::size_t n) const { return states_[n]; }
    const std::vector<word_t>& states() const { return states_; }

    /// Ordinal of a configuration. Throws ConstraintViolation if the word
    /// breaks the basis constraint (e.g. adjacent excitations).
    std::size_t index_of(word_t bits) const;

    bool valid(word_t bits) const;

    static constexpr std::size_t default_max_states = std::size_t(1) << 26;

private:
    ConstrainedBasis() = default;
    void build_index();

    int length_ = 0;
    Boundary bc_ = Boundary::open;
    bool blockaded_ = true;
    std::vector<word_t> states_;
    std::vector<std::uint32_t> lookup_;  // empty when binary search is used
};

}  // namespace scarlab

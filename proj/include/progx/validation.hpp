#pragma once

#include "progx/bitset.hpp"
#include "progx/geometry.hpp"

#include <cstdint>
#include <vector>

namespace progx {

// Preference set: bit j set iff point j is an epsilon-inlier of the
// instance. The compound preference set is the OR of the active instances'.
using PreferenceSet = Bitset;

PreferenceSet preference_set(const Instance& instance, const DataMatrix& data, double epsilon);

struct MinHashSignature {
    std::vector<uint64_t> values;  // K minima, sentinel ~0 for the empty set
    uint64_t seed_tag = 0;
    bool empty_set = true;
};

// K multiply-add hash functions over point indices; the seed set is shared
// pipeline-wide so any two signatures are comparable.
class MinHasher {
public:
    static constexpr uint64_t kPipelineSeed = 0x70726f6772657373ULL;

    explicit MinHasher(size_t k = 512, uint64_t seed = kPipelineSeed);

    MinHashSignature signature(const PreferenceSet& set) const;

    size_t hash_count() const { return mult_.size(); }
    uint64_t seed_tag() const { return seed_tag_; }

private:
    std::vector<uint64_t> mult_;
    std::vector<uint64_t> add_;
    uint64_t seed_tag_;
};

// Intersection over union; 0 when both sets are empty. Throws
// std::invalid_argument on length mismatch.
double jaccard_exact(const PreferenceSet& a, const PreferenceSet& b);

// Fraction of agreeing positions: an unbiased estimator of the Jaccard
// similarity. Throws std::invalid_argument on K/seed mismatch.
double minhash_estimate(const MinHashSignature& a, const MinHashSignature& b);

enum class Validation { Accept, Reject };

// Accept iff the Jaccard distance (1 - J) from the compound preference set
// is at least epsilon_s. exact_jaccard bypasses the min-hash estimate.
Validation validate(const PreferenceSet& proposal_pref, const PreferenceSet& compound_pref,
                    double epsilon_s, const MinHasher& hasher, bool exact_jaccard = false);

Validation validate(const MinHashSignature& proposal_sig,
                    const MinHashSignature& compound_sig, double epsilon_s);

}  // namespace progx

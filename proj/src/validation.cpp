#include "progx/validation.hpp"

#include <limits>
#include <stdexcept>

namespace progx {
namespace {

uint64_t splitmix64(uint64_t& x) {
    uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// A plain multiply-add is too linear to be min-wise independent (contiguous
// index ranges bias the estimate); the finalizer breaks that structure.
uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr uint64_t kEmptySentinel = std::numeric_limits<uint64_t>::max();

}  // namespace

PreferenceSet preference_set(const Instance& instance, const DataMatrix& data,
                             double epsilon) {
    PreferenceSet bits(data.rows());
    for (size_t p = 0; p < data.rows(); ++p)
        if (residual(instance, data, p) < epsilon) bits.set(p);
    return bits;
}

MinHasher::MinHasher(size_t k, uint64_t seed) {
    mult_.resize(k);
    add_.resize(k);
    uint64_t state = seed;
    seed_tag_ = splitmix64(state) ^ (k * 0x9e3779b97f4a7c15ULL);
    for (size_t i = 0; i < k; ++i) {
        mult_[i] = splitmix64(state) | 1;  // odd multiplier
        add_[i] = splitmix64(state);
    }
}

MinHashSignature MinHasher::signature(const PreferenceSet& set) const {
    MinHashSignature sig;
    sig.seed_tag = seed_tag_;
    sig.values.assign(mult_.size(), kEmptySentinel);
    set.for_each_set([&](size_t member) {
        const uint64_t x = static_cast<uint64_t>(member) + 0x9e3779b97f4a7c15ULL;
        for (size_t i = 0; i < mult_.size(); ++i) {
            const uint64_t h = mix(mult_[i] * x + add_[i]);
            if (h < sig.values[i]) sig.values[i] = h;
        }
        sig.empty_set = false;
    });
    return sig;
}

double jaccard_exact(const PreferenceSet& a, const PreferenceSet& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("jaccard_exact: preference-set length mismatch");
    const size_t uni = a.union_count(b);
    if (uni == 0) return 0.0;
    return static_cast<double>(a.intersection_count(b)) / static_cast<double>(uni);
}

double minhash_estimate(const MinHashSignature& a, const MinHashSignature& b) {
    if (a.values.size() != b.values.size() || a.seed_tag != b.seed_tag)
        throw std::invalid_argument("minhash_estimate: signature mismatch");
    if (a.empty_set || b.empty_set) return 0.0;
    size_t agree = 0;
    for (size_t i = 0; i < a.values.size(); ++i)
        if (a.values[i] == b.values[i]) ++agree;
    return static_cast<double>(agree) / static_cast<double>(a.values.size());
}

Validation validate(const PreferenceSet& proposal_pref, const PreferenceSet& compound_pref,
                    double epsilon_s, const MinHasher& hasher, bool exact_jaccard) {
    const double j = exact_jaccard
                         ? jaccard_exact(proposal_pref, compound_pref)
                         : minhash_estimate(hasher.signature(proposal_pref),
                                            hasher.signature(compound_pref));
    return (1.0 - j) >= epsilon_s ? Validation::Accept : Validation::Reject;
}

Validation validate(const MinHashSignature& proposal_sig,
                    const MinHashSignature& compound_sig, double epsilon_s) {
    const double j = minhash_estimate(proposal_sig, compound_sig);
    return (1.0 - j) >= epsilon_s ? Validation::Accept : Validation::Reject;
}

}  // namespace progx

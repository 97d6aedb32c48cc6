#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "ncad/delta.hpp"
#include "ncad/derivation.hpp"

namespace ncad {

/// One evaluation point for a split-difference identity: points/dirs laid
/// out for the order-(k+1) or order-(k+2) oracle being probed.
struct DeltaSample {
  std::vector<PointMatrix> points;
  std::vector<PointMatrix> dirs;
};

/// Samples for one compatibility pair (i, j), i <= j.
struct PairSamples {
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<DeltaSample> samples;
};

/// Samples for one slot of an antiderivative verification.
struct SlotSamples {
  std::size_t slot = 0;
  std::vector<DeltaSample> samples;
};

/// Reconstructed antiderivative of order k: base points Y^0..Y^k, the base
/// value (matrix f_0 for k = 0, stored as the arity-0 map; the combined g
/// otherwise), and the order k+1 sources F_0..F_k. The evaluator is defined
/// exactly at sizes that are multiples of the base sizes, slotwise.
struct Antiderivative {
  std::size_t order = 0;
  std::vector<PointMatrix> basepoints;
  MultiLinearMap base = MultiLinearMap({}, 1, 1);
  std::vector<NcOracle> sources;

  /// f_0 for order 0.
  ScalarMatrix base_value() const { return base.eval({}); }

  ScalarMatrix eval(const std::vector<PointMatrix>& points,
                    const std::vector<PointMatrix>& dirs) const;
  NcOracle as_oracle() const;
};

/// Entry-level kernel of a constant difference: the value of the difference
/// map on chained elementary tuples, indexed by component tuples only.
struct BlockFormKernel {
  std::vector<std::size_t> zdims;
  std::vector<Scalar> values;  // dense over component tuples, mixed radix

  const Scalar& at(const std::vector<std::size_t>& gamma) const;
  Scalar& at(const std::vector<std::size_t>& gamma);
};

/// Succeeds iff h is a block-form constant: coefficients vanish off chained
/// tuples, chained tuples contribute only at the matching output entry, and
/// the contribution depends on the component tuple alone. Arity 0 succeeds
/// iff the value is a scalar multiple of the identity.
std::optional<BlockFormKernel> extract_blockform(const MultiLinearMap& h);

/// The block-form constant determined by a kernel, at given argument shapes.
MultiLinearMap blockform_map(const BlockFormKernel& kernel, const std::vector<ArgShape>& argshapes);

/// Common underlying slot lists behind sources F_0..F_k: each F_j must carry
/// the base x-list with slot j duplicated and the base direction list with the
/// slot-j alphabet inserted at j. Returns (base xdims, base zdims); throws
/// when the sources do not fit one base signature.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> source_base_dims(
    const std::vector<NcOracle>& fs);

/// Exact equality of the two split differences of a first order function on
/// each sample (3 points, 2 directions). A genuine difference always passes.
CheckReport check_integrability_order1(const NcOracle& f, const std::vector<DeltaSample>& samples);

/// Cross compatibility of the order k+1 sources F_0..F_k: slot-i split of
/// F_j equals slot-(j+1) split of F_i on every sample of every pair.
CheckReport check_integrability_higher(const std::vector<NcOracle>& fs,
                                       const std::vector<PairSamples>& samples);

/// Deterministic sample generators: amplified base points (multiplicity up
/// to 3) mixed with random points of small sizes.
std::vector<DeltaSample> order1_integrability_samples(const NcOracle& f, const PointMatrix& y,
                                                      std::uint64_t seed);
std::vector<PairSamples> higher_integrability_samples(const std::vector<NcOracle>& fs,
                                                      const std::vector<PointMatrix>& ys,
                                                      std::uint64_t seed);
/// Per-slot samples sized at slotwise multiples of f's base sizes.
std::vector<SlotSamples> antiderivative_samples(const Antiderivative& f, std::uint64_t seed);

/// Order-0 reconstruction at base Y: f_0 solves the base derivation table
/// (normalized by c), and f(X) = I_m (x) f_0 + F(I_m (x) Y, X)(X - I_m (x) Y).
/// Integrability is certified on internal samples first (sampled, not global).
Antiderivative integrate_order1(const NcOracle& f, const PointMatrix& y, const Scalar& c = Scalar(0));

/// Higher-order reconstruction at bases Y^0..Y^k from sources F_0..F_k.
Antiderivative integrate_higher(const std::vector<NcOracle>& fs,
                                const std::vector<PointMatrix>& ys);

/// Symbolic integration: inverts the slot-j word split exactly, or reports
/// the offending merge class. Kernel monomials of the result are set to zero.
NcPolynomial integrate_poly(const NcPolynomial& p, std::size_t j);

/// Asserts the slot-j split of f equals F_j on every sample, then rebuilds a
/// second antiderivative at doubled base points and confirms the difference
/// is a point-independent block-form constant.
CheckReport verify_antiderivative(const Antiderivative& f, const std::vector<NcOracle>& fs,
                                  const std::vector<SlotSamples>& samples);

}  // namespace ncad

#pragma once

#include "lplab/grid.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lplab {

enum class GeneratorKind { Gaussian, Bump, Random, Hermite };

/**
 * One test-function generator. Every generator is an analytic formula in x, so
 * dilates f(lambda x) are evaluated exactly rather than resampled.
 *
 *   Gaussian  exp(-pi |x - c e1|^2 / w^2) cos(2 pi xi0 x1)
 *   Bump      exp(-1 / (1 - |x - c e1|^2 / R^2)) inside the ball, 0 outside
 *   Random    Gaussian taper of width w times a sum of seeded plane waves whose
 *             frequencies lie in [2^k_lo, 2^(k_hi + 1))
 *   Hermite   H_degree(sqrt(2 pi) x1 / w) exp(-pi |x|^2 / w^2), degree <= 4
 */
struct MemberSpec {
    GeneratorKind kind = GeneratorKind::Gaussian;
    std::string name;
    double center = 0.0;
    double width = 1.0;
    double modulation = 0.0;
    double radius = 1.0;
    int k_lo = -1;
    int k_hi = 1;
    std::uint64_t seed = 1;
    int degree = 2;

    /// Length scale used for the mean-removal Gaussian.
    double scale() const noexcept;
};

const char* to_string(GeneratorKind kind) noexcept;
GeneratorKind parse_generator_kind(const std::string& name);

struct FamilyOptions {
    double dilation = 1.0;   // evaluate f(dilation * x)
    bool mean_free = false;  // subtract (integral f) times a unit-mass Gaussian of the member's scale
};

struct FamilyMember {
    std::string name;
    SampledField field;
};

/// Throws std::invalid_argument on bad parameters and std::domain_error when the
/// field is not negligible at the box seam.
SampledField generate_member(const MemberSpec& member, const GridSpec& spec,
                             const FamilyOptions& options = {});

std::vector<FamilyMember> generate_family(const std::vector<MemberSpec>& members,
                                          const GridSpec& spec, const FamilyOptions& options = {});

/// Two Gaussians, a bump, a modulated Gaussian and two seeded random fields.
std::vector<MemberSpec> default_family();

}  // namespace lplab

#pragma once

#include <optional>
#include <string>

#include "gfl/canon.hpp"
#include "gfl/rational.hpp"
#include "gfl/sampler.hpp"

namespace gfl {

// Periodic modulation of a Gaussian law: the predicted density at normalized
// position z is N(z) * comb(arg0 + arg1*z + arg2*z^2), where comb is a width-C
// sum of Gaussians centered at the integers.
struct ThetaMultiplier {
    double comb_width = 1;
    double arg0 = 0;
    double arg1 = 0;
    double arg2 = 0;
};

// Multiplier for progression counts over Z/n with density p.
ThetaMultiplier kap_multiplier(int n, int k, double p, double comb_width);

// A law supported on the lattice {lattice_offset + lattice_step * j}.
// Without a multiplier the mass at lattice point x is
// (lattice_step/std) * N((x - mean)/std).
struct LatticeLaw {
    double mean = 0;
    double std = 1;
    double lattice_offset = 0;
    double lattice_step = 1;
    std::optional<ThetaMultiplier> multiplier;
};

double gaussian_density(double z);
// sum over integers m of N((x - m)/width)/width; truncated once terms
// drop below 1e-16, expanding symmetrically from the nearest integer.
double theta_comb(double x, double width);
double law_density(const LatticeLaw& law, double z);
double law_mass(const LatticeLaw& law, double x);
// N(z) times the progression-count multiplier evaluated at z.
double theta_prediction(double z, int n, int k, double p, double comb_width);

struct DistanceReport {
    double sup_dist = 0;      // max over window of |std*Phat/step - density(z)|
    double l1_dist = 0;       // sum over window of |Phat - mass| plus outside_mass
    double outside_mass = 0;  // empirical mass not matched to a window lattice point
};
DistanceReport lclt_distances(const EmpiricalPMF& pmf, const LatticeLaw& law,
                              double window_sigmas = 6.0);
// CSV rows "z,predicted_mass,empirical_mass" over the same window.
std::string law_curve_csv(const EmpiricalPMF& pmf, const LatticeLaw& law,
                          double window_sigmas = 6.0);

enum class KapModel { independent, slice };

struct KapMoments {
    Rational mean;
    Rational variance;
    double sigma_asymptotic = 0;  // p^(k-1/2) (1-p)^(1/2) k n^(3/2) / 2
};

// Exact mean and variance of the progression count, either with independent
// density-p entries or conditioned on exactly p*n ones (slice model).
KapMoments kap_moments(int n, int k, const Rational& p, KapModel model);

// Exact variance of the part of the progression count with chi-degree at
// least min_degree in the independent model.
Rational kap_chi_tail_variance(int n, int k, const Rational& p, int min_degree);

// Width constant of the theta comb: std of the degree>=3 part times
// sqrt(n p(1-p)) divided by the full std, both exact at this n.
double ckp(int n, int k, const Rational& p);

// Exact expectation of the copy count of h in a uniform n-vertex graph
// with exactly m edges.
Rational expected_count_given_m(const CanonGraph& h, int n, long long m);

struct GraphMoments {
    Rational mean;
    Rational variance;
};

// Exact mean and variance of the triangle count under the model. Supports
// the independent and fixed-edge-count kinds; pairs of triangles are
// classified by shared edges, so the cost is O(1) in n.
GraphMoments triangle_moments(const ModelSpec& model);

}  // namespace gfl

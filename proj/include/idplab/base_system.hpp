// Base dynamical systems: sigma-finite measure, invertible transformation and
// a real observable, exposed through exact window-restricted operations.
// Sampling is always from the measure conditioned on the window-hit set
// A(w) = { orbit exceeds the threshold somewhere in the window }, which every
// shipped family keeps at finite mass. Four parametric families are provided,
// one per ergodic class, plus a disjoint-union combinator.
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "idplab/window.hpp"

namespace idplab {

class Rng;

enum class Family {
    MovingAverage,
    NullRecurrentWalk,
    RigidTower,
    FiniteInvariant,
    DisjointUnion,
};

enum class ErgodicClass {
    Dissipative,
    ConservativeZeroType,
    PositiveTypeIIInf,
    TypeII1,
    Composite,
};

const char* family_name(Family f);
const char* ergodic_class_name(ErgodicClass c);

// --- points -----------------------------------------------------------------

struct MovingAveragePoint {
    int offset = 0;       // pulse anchor tau; orbit value is amplitude * h(i - tau)
    double amplitude = 0.0;
};

struct WalkPoint {
    int lo = 0;                       // first materialized time index
    std::vector<int> positions;       // walk position at times lo .. lo+size-1
    double mark = 0.0;
};

struct TowerPoint {
    long long level = 0;  // level in the stage-depth tower
    double pos = 0.0;     // horizontal coordinate within the level (unused by f)
};

struct LawPoint {
    std::uint64_t path_seed = 0;  // seed-addressed realization of the law
    long long shift = 0;          // orbit re-anchoring offset
};

struct BasePoint;

struct UnionPoint {
    std::size_t component = 0;
    std::shared_ptr<const BasePoint> inner;
};

struct BasePoint {
    std::variant<MovingAveragePoint, WalkPoint, TowerPoint, LawPoint, UnionPoint> payload;
};

// --- window cells -----------------------------------------------------------

// A cell is a finite-mass measurable sub-event of a window-hit set with an
// exactly known mass. Cells from one partition are pairwise disjoint, which
// makes every cross integral of cell-based test functions a finite sum.
struct Cell {
    std::string label;
    double mass = 0.0;
    WindowSpec support;  // window the cell was carved from
    std::function<bool(const BasePoint&)> contains;
};

struct ExpTerm {
    int pos = 0;  // orbit position within the window
    std::complex<double> z;
};

enum class CompensatorKind { Identity, CTrunc };

struct EmpiricalCorrelation {
    int lag = 0;
    double estimate = 0.0;
    double se = 0.0;
};

// --- the system contract ------------------------------------------------------

// Exact sampler for mu restricted to A(w), normalized. Prepared once per
// (system, window, slack) and reused across draws; immutable afterwards.
class PreparedSampler {
  public:
    virtual ~PreparedSampler() = default;
    virtual double mass() const = 0;
    virtual BasePoint sample(Rng& rng) const = 0;
};

class BaseSystem {
  public:
    virtual ~BaseSystem() = default;

    virtual Family family() const = 0;
    virtual ErgodicClass declared_class() const = 0;
    virtual std::string describe() const = 0;

    // mu(A(w)), exact
    virtual double hit_mass(const WindowSpec& w) const = 0;

    // sampler for mu|A(w); 'slack' widens the materialized orbit range so the
    // point stays evaluable at indices [-slack, w.length-1+slack]
    virtual std::shared_ptr<const PreparedSampler> prepare(const WindowSpec& w,
                                                           int slack) const = 0;

    // f(T^i omega); deterministic, throws on indices beyond the point's
    // representable range (rigid tower depth, materialized walk path)
    virtual double orbit_eval(const BasePoint& p, int i) const = 0;

    // re-anchors the point: orbit_eval(shift_point(p,k), i) == orbit_eval(p, i+k)
    virtual BasePoint shift_point(const BasePoint& p, int k) const = 0;

    // disjoint exact-mass decomposition of A(w)
    virtual std::vector<Cell> cells(const WindowSpec& w) const = 0;

    // exact int_{A(w)} kappa(f o T^pos) dmu with kappa identity or c-truncation
    virtual double compensator_integral(const WindowSpec& w, int pos,
                                        CompensatorKind kind) const = 0;

    // exact int_{A(w)} (f o T^i)(f o T^j) dmu; +inf when divergent,
    // nullopt when no exact route exists for the family
    virtual std::optional<double> pair_integral(const WindowSpec& w, int i,
                                                int j) const = 0;

    // exact int_{A(w)} (exp(sum_j z_j f o T^{c_j}) - 1) dmu; nullopt when the
    // family has no closed form (callers fall back to importance sampling)
    virtual std::optional<std::complex<double>> windowed_exp_integral(
        const WindowSpec& w, std::span<const ExpTerm> terms) const = 0;

    // exact int_{A(w)^c} (f o T^pos)^2 dmu; the per-coordinate variance of the
    // jumps the window truncation discards
    virtual double small_jump_second_moment(const WindowSpec& w, int pos) const = 0;

    // exact int_{A(w)^c} f o T^pos dmu when f >= 0 (truncated-mean gap)
    virtual double small_jump_mean(const WindowSpec& w, int pos) const = 0;

    // full-space integrals of the observable; +/-inf when divergent
    virtual double observable_mean() const = 0;
    virtual double observable_second_moment() const = 0;
    // int c(f) dmu over the full space; throws std::domain_error when divergent
    virtual double full_ctrunc_integral() const = 0;

    virtual bool observable_nonnegative() const = 0;

    // exact mu(A(w) against T^{-k}A(w)); nullopt when no exact route exists
    virtual std::optional<double> exact_pair_mass(const WindowSpec& w, int k) const {
        (void)w;
        (void)k;
        return std::nullopt;
    }

    // Q{x_pos > t} over the full space (stationary, so position-free);
    // nullopt when not exactly computable
    virtual std::optional<double> coordinate_tail_mass(double t) const {
        (void)t;
        return std::nullopt;
    }

    // lags at which correlations provably revive (empty for non-rigid families)
    virtual std::vector<long long> rigidity_lags(long long max_lag) const {
        (void)max_lag;
        return {};
    }

    // crop margin that makes kept-window statistics exactly stationary
    virtual int default_margin() const { return 0; }

    bool square_integrable_observable() const;
    bool integrable_observable() const;

    // importance-sampling estimate of mu(A(w) cap T^{-k}A(w)); exact at k=0
    EmpiricalCorrelation correlation_estimate(const WindowSpec& w, int k,
                                              int draws, Rng& rng) const;

    // true when the orbit of p exceeds w.threshold somewhere in [offset, offset+length)
    bool window_hit(const BasePoint& p, const WindowSpec& w, int offset) const;
};

using BaseSystemPtr = std::shared_ptr<const BaseSystem>;

}  // namespace idplab

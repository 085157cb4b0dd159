#include "scenarios.hpp"

#include <cmath>
#include <sstream>

#include "sdn/applications.hpp"
#include "sdn/denoise.hpp"
#include "sdn/errors.hpp"
#include "sdn/io.hpp"
#include "sdn/localized.hpp"
#include "sdn/simlab/noise.hpp"
#include "sdn/simlab/rng.hpp"
#include "sdn/simlab/signals.hpp"
#include "sdn/svd.hpp"

namespace sdn::simlab::detail {

using nlohmann::json;

namespace {

// Seed streams within one replicate.
constexpr std::uint64_t kSignalStream = 1;
constexpr std::uint64_t kNoiseStream = 2;
constexpr std::uint64_t kMaskStream = 3;

Index get_dim(const json& p, const char* key, Index min_value = 2) {
  if (!p.contains(key) || !p.at(key).is_number_integer()) {
    throw InvalidArgument(std::string("parameter '") + key + "' must be an integer");
  }
  const auto v = p.at(key).get<long long>();
  if (v < min_value) throw InvalidArgument(std::string("parameter '") + key + "' is too small");
  return static_cast<Index>(v);
}

double get_double(const json& p, const char* key) {
  if (!p.contains(key) || !p.at(key).is_number()) {
    throw InvalidArgument(std::string("parameter '") + key + "' must be a number");
  }
  return p.at(key).get<double>();
}

std::vector<double> get_doubles(const json& p, const char* key) {
  if (!p.contains(key) || !p.at(key).is_array() || p.at(key).empty()) {
    throw InvalidArgument(std::string("parameter '") + key + "' must be a nonempty array of numbers");
  }
  std::vector<double> out;
  for (const auto& v : p.at(key)) {
    if (!v.is_number()) throw InvalidArgument(std::string("parameter '") + key + "' must contain numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<Index> get_dims(const json& p, const char* key) {
  std::vector<Index> out;
  for (double v : get_doubles(p, key)) {
    if (v < 2 || v != std::floor(v)) throw InvalidArgument(std::string("parameter '") + key + "' needs integers >= 2");
    out.push_back(static_cast<Index>(v));
  }
  return out;
}

Index scale_dim(Index d, double scale, bool even) {
  auto v = static_cast<Index>(std::llround(static_cast<double>(d) * scale));
  if (even) v = 2 * std::max<Index>(1, (v + 1) / 2);
  return std::max<Index>(even ? 4 : 2, v);
}

std::string fmt(double v) { return io::format_double(v); }

NoiseSpec parse_noise_label(const std::string& label) {
  NoiseSpec spec;
  if (label == "gaussian") return spec;
  if (label == "rademacher") {
    spec.dist = NoiseDistribution::rademacher;
    return spec;
  }
  if (label.size() > 1 && label[0] == 't') {
    double df = 0.0;
    std::istringstream in(label.substr(1));
    if (in >> df && in.eof() && df > 0.0) {
      spec.dist = NoiseDistribution::student_t;
      spec.df = df;
      return spec;
    }
  }
  throw InvalidArgument("unknown noise label '" + label + "' (use gaussian, rademacher or t<df>)");
}

std::vector<std::string> get_labels(const json& p, const char* key) {
  if (!p.contains(key) || !p.at(key).is_array() || p.at(key).empty()) {
    throw InvalidArgument(std::string("parameter '") + key + "' must be a nonempty array of strings");
  }
  std::vector<std::string> out;
  for (const auto& v : p.at(key)) {
    if (!v.is_string()) throw InvalidArgument(std::string("parameter '") + key + "' must contain strings");
    out.push_back(v.get<std::string>());
    parse_noise_label(out.back());
  }
  return out;
}

Matrix noise_for(const std::string& label, Index p, Index n, std::uint64_t seed) {
  NoiseSpec spec = parse_noise_label(label);
  spec.seed = derive_seed(seed, kNoiseStream);
  return gen_noise(spec, p, n);
}

Vector linspace(double a, double b, Index m) {
  if (m == 1) return Vector::Constant(1, a);
  return Vector::LinSpaced(m, a, b);
}

// Rank-two signal with a constant and a split component (the shape used for
// the noise-distribution and rank studies).
Signal split_signal(Index p, Index n, double t1, double t2) {
  return gen_signal(SignalSpec{p, n, ConstantSplit{t1, t2}});
}

// ---------------------------------------------------------------------------

class WeightedInnerProducts final : public Scenario {
 public:
  std::string name() const override { return "weighted-inner-products"; }
  json defaults() const override {
    return {{"n", {500}},
            {"gamma", 2.0},
            {"noise", {"gaussian", "rademacher", "t10", "t3"}},
            {"omega_fraction", 0.75},
            {"t_offsets", {3.0, 2.0}}};
  }
  void validate(const json& p) const override {
    get_dims(p, "n");
    if (!(get_double(p, "gamma") > 0.0)) throw InvalidArgument("gamma must be positive");
    get_labels(p, "noise");
    const double f = get_double(p, "omega_fraction");
    if (!(f > 0.0 && f <= 1.0)) throw InvalidArgument("omega_fraction must lie in (0, 1]");
    const auto t = get_doubles(p, "t_offsets");
    if (t.size() != 2 || !(t[0] > t[1] && t[1] > 0.0)) throw InvalidArgument("t_offsets must be two decreasing positive numbers");
  }
  json scaled(json p, double s) const override {
    json ns = json::array();
    for (Index n : get_dims(p, "n")) ns.push_back(scale_dim(n, s, true));
    p["n"] = ns;
    return p;
  }
  std::vector<Point> points(const json& p) const override {
    std::vector<Point> out;
    for (Index n : get_dims(p, "n")) {
      for (const auto& lab : get_labels(p, "noise")) out.push_back({lab + "/n=" + std::to_string(n), {{"n", n}, {"noise", lab}}});
    }
    return out;
  }
  Metrics run(const json& p, const Point& pt, std::uint64_t seed) const override {
    const Index n = pt.values.at("n").get<Index>();
    Index pp = static_cast<Index>(std::llround(get_double(p, "gamma") * static_cast<double>(n)));
    pp += pp % 2;
    const AspectRatio gamma = AspectRatio::of(pp, n);
    const auto off = get_doubles(p, "t_offsets");
    const double thr = gamma.detection_threshold();
    const Signal sig = split_signal(pp, n, thr + off[0], thr + off[1]);
    const Matrix Y = sig.X + noise_for(pt.values.at("noise").get<std::string>(), pp, n, seed);

    const auto kept = static_cast<Index>(std::floor(get_double(p, "omega_fraction") * static_cast<double>(pp)));
    Vector w = Vector::Zero(pp);
    w.head(kept).setOnes();
    const WeightOperator omega = WeightOperator::diagonal(w);
    const double mu = trace_weight(omega, pp);

    const SingularTriplets trip = leading_triplets(Y, 2);
    const Matrix WU = omega.apply(trip.U);
    const Matrix D_hat = (WU.transpose() * WU).cwiseAbs();
    const Matrix C_hat = (WU.transpose() * omega.apply(sig.U)).cwiseAbs();

    // limits from the population vectors
    const Matrix E = omega.gram(sig.U);
    Matrix D_lim(2, 2), C_lim(2, 2);
    Cosines cs[2] = {cosines(sig.t[0], gamma), cosines(sig.t[1], gamma)};
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        D_lim(j, k) = (j == k) ? cs[j].c * cs[j].c * E(j, j) + cs[j].s * cs[j].s * mu : E(j, k) * cs[j].c * cs[k].c;
        C_lim(j, k) = E(j, k) * cs[j].c;
      }
    }
    return {{"c_error", (C_hat - C_lim.cwiseAbs()).norm() / C_lim.norm()},
            {"d_error", (D_hat - D_lim.cwiseAbs()).norm() / D_lim.norm()},
            {"lambda_1", trip.values[0]},
            {"lambda_2", trip.values[1]}};
  }
};

// ---------------------------------------------------------------------------

class RankEstimation final : public Scenario {
 public:
  std::string name() const override { return "rank-estimation"; }
  json defaults() const override {
    return {{"p", 300}, {"n", 600}, {"noise", {"gaussian"}}, {"signal", true}, {"margin", 0.0}, {"t_offsets", {2.0, 1.0}}};
  }
  void validate(const json& p) const override {
    const Index pp = get_dim(p, "p", 4);
    const Index n = get_dim(p, "n", 4);
    if (pp % 2 || n % 2) throw InvalidArgument("p and n must be even");
    get_labels(p, "noise");
    if (!p.at("signal").is_boolean()) throw InvalidArgument("signal must be a boolean");
    if (!(get_double(p, "margin") >= 0.0)) throw InvalidArgument("margin must be nonnegative");
    const auto t = get_doubles(p, "t_offsets");
    if (t.size() != 2 || !(t[0] > t[1] && t[1] > 0.0)) throw InvalidArgument("t_offsets must be two decreasing positive numbers");
  }
  json scaled(json p, double s) const override {
    p["p"] = scale_dim(get_dim(p, "p"), s, true);
    p["n"] = scale_dim(get_dim(p, "n"), s, true);
    return p;
  }
  std::vector<Point> points(const json& p) const override {
    std::vector<Point> out;
    for (const auto& lab : get_labels(p, "noise")) out.push_back({lab, {{"noise", lab}}});
    return out;
  }
  Metrics run(const json& p, const Point& pt, std::uint64_t seed) const override {
    const Index pp = get_dim(p, "p");
    const Index n = get_dim(p, "n");
    const AspectRatio gamma = AspectRatio::of(pp, n);
    const auto off = get_doubles(p, "t_offsets");
    const double thr = gamma.detection_threshold();
    const bool with_signal = p.at("signal").get<bool>();
    const Signal sig = split_signal(pp, n, thr + off[0], thr + off[1]);
    const Matrix X = with_signal ? sig.X : Matrix::Zero(pp, n);
    const Matrix Y = X + noise_for(pt.values.at("noise").get<std::string>(), pp, n, seed);

    const WeightOperator omega = WeightOperator::diagonal(linspace(1.0 / static_cast<double>(pp), 1.0, pp));
    const WeightOperator pi = WeightOperator::diagonal(linspace(1.0 / static_cast<double>(pp), 1.0 / gamma.value(), n));

    const double threshold = gamma.bulk_edge() + get_double(p, "margin");
    const SingularTriplets trip = triplets_above(Y, threshold, 2);
    Index naive = 0;
    while (naive < trip.values.size() && trip.values[naive] > threshold) ++naive;

    Metrics m{{"naive_rank", static_cast<double>(naive)}};
    if (!with_signal) return m;

    auto error_with = [&](Index r) {
      if (r == 0) return 1.0;
      SpectralBasis b;
      b.U = trip.U.leftCols(r);
      b.V = trip.V.leftCols(r);
      b.spikes = estimate_spike_params(std::span<const double>(trip.values.data(), static_cast<std::size_t>(r)), gamma, r);
      const DenoiseResult res = spectral_denoise(b, omega, pi);
      return relative_error(res.X_hat, X, &omega, &pi);
    };
    m.emplace_back("error_oracle", error_with(2));
    m.emplace_back("error_naive", error_with(naive));
    return m;
  }
};

// ---------------------------------------------------------------------------

class LocalizedCheckerboard final : public Scenario {
 public:
  std::string name() const override { return "localized-checkerboard"; }
  json defaults() const override {
    return {{"p", 800},         {"n", 800},          {"f", {0.7}},           {"cells", {4, 4}},
            {"blocks", {4, 4}}, {"noise_level", 0.1}, {"signal", "checkerboard"}};
  }
  void validate(const json& p) const override {
    const Index pp = get_dim(p, "p");
    const Index n = get_dim(p, "n");
    for (double f : get_doubles(p, "f")) {
      if (!(f >= 0.5 && f <= 1.0)) throw InvalidArgument("f must lie in [1/2, 1]");
    }
    const auto cells = get_dims(p, "cells");
    const auto blocks = get_doubles(p, "blocks");
    if (cells.size() != 2 || blocks.size() != 2) throw InvalidArgument("cells and blocks must be [rows, cols]");
    if (cells[0] > pp || cells[1] > n) throw InvalidArgument("more cells than coordinates");
    if (blocks[0] < 1 || blocks[1] < 1 || blocks[0] > pp || blocks[1] > n) throw InvalidArgument("invalid block counts");
    if (!(get_double(p, "noise_level") > 0.0)) throw InvalidArgument("noise_level must be positive");
    const auto sig = p.at("signal");
    if (!sig.is_string() || (sig != "checkerboard" && sig != "random" && sig != "logo")) {
      throw InvalidArgument("signal must be checkerboard, random or logo");
    }
  }
  json scaled(json p, double s) const override {
    p["p"] = scale_dim(get_dim(p, "p"), s, false);
    p["n"] = scale_dim(get_dim(p, "n"), s, false);
    return p;
  }
  std::vector<Point> points(const json& p) const override {
    std::vector<Point> out;
    for (double f : get_doubles(p, "f")) out.push_back({"f=" + fmt(f), {{"f", f}}});
    return out;
  }
  Metrics run(const json& p, const Point& pt, std::uint64_t seed) const override {
    const Index pp = get_dim(p, "p");
    const Index n = get_dim(p, "n");
    const auto cells = get_dims(p, "cells");
    const auto blocks = get_doubles(p, "blocks");
    const double f = pt.values.at("f").get<double>();
    const std::string kind = p.at("signal").get<std::string>();

    Signal sig;
    if (kind == "logo") {
      sig = gen_signal(SignalSpec{pp, n, BlockImage{logo_cells()}});
      const double nrm = sig.X.norm();
      sig.X /= nrm;
      sig.t /= nrm;
    } else {
      sig = gen_signal(SignalSpec{pp, n, Checkerboard{f, cells[0], cells[1]}});
      if (kind == "random") {
        sig = gen_signal(SignalSpec{pp, n, RandomOrthonormal{sig.t, derive_seed(seed, kSignalStream)}});
      }
    }
    // Y = X + level * G with G of entry variance 1/n; denoise Y / level
    const double level = get_double(p, "noise_level");
    NoiseSpec ns;
    ns.seed = derive_seed(seed, kNoiseStream);
    const Matrix Ys = sig.X / level + gen_noise(ns, pp, n);

    const SpectralBasis basis = spectral_basis(Ys);
    const Partition rows = make_equispaced_partition(pp, static_cast<Index>(blocks[0]));
    const Partition cols = make_equispaced_partition(n, static_cast<Index>(blocks[1]));
    const LocalizedResult loc = localized_denoise(basis, rows, cols);
    const DenoiseResult shr = svs_shrink(basis);
    const Matrix X_loc = loc.X_hat * level;
    const Matrix X_shr = shr.X_hat * level;
    const double norm_sq = sig.X.squaredNorm();
    const double loss_loc = (X_loc - sig.X).squaredNorm();
    const double loss_shr = (X_shr - sig.X).squaredNorm();
    return {{"err_localized", std::sqrt(loss_loc / norm_sq)},
            {"err_shrink", std::sqrt(loss_shr / norm_sq)},
            {"loss_localized", loss_loc},
            {"loss_shrink", loss_shr},
            {"loss_gap", loss_shr - loss_loc},
            {"signal_norm_sq", norm_sq},
            {"amse_localized", loc.amse_estimate * level * level},
            {"amse_shrink", shr.amse_estimate * level * level},
            {"rank", static_cast<double>(basis.spikes.rank())}};
  }
};

// ---------------------------------------------------------------------------

class Submatrix final : public Scenario {
 public:
  std::string name() const override { return "submatrix"; }
  json defaults() const override {
    return {{"p", 500}, {"n", 1000}, {"f", {0.05, 0.25, 0.95}}, {"t_offset", 0.5}, {"noise", "gaussian"}};
  }
  void validate(const json& p) const override {
    get_dim(p, "p", 4);
    get_dim(p, "n", 4);
    for (double f : get_doubles(p, "f")) {
      if (!(f > 0.0 && f < 1.0)) throw InvalidArgument("f must lie in (0, 1)");
    }
    if (!(get_double(p, "t_offset") > 0.0)) throw InvalidArgument("t_offset must be positive");
    if (!p.at("noise").is_string()) throw InvalidArgument("noise must be a string");
    parse_noise_label(p.at("noise").get<std::string>());
  }
  json scaled(json p, double s) const override {
    p["p"] = scale_dim(get_dim(p, "p"), s, true);
    p["n"] = scale_dim(get_dim(p, "n"), s, true);
    return p;
  }
  std::vector<Point> points(const json& p) const override {
    std::vector<Point> out;
    for (double f : get_doubles(p, "f")) out.push_back({"f=" + fmt(f), {{"f", f}}});
    return out;
  }
  Metrics run(const json& p, const Point& pt, std::uint64_t seed) const override {
    const Index pp = get_dim(p, "p");
    const Index n = get_dim(p, "n");
    const AspectRatio gamma = AspectRatio::of(pp, n);
    const double f = pt.values.at("f").get<double>();
    const double t = gamma.detection_threshold() + get_double(p, "t_offset");
    // each singular vector has energy sqrt(f) on the first half, so the
    // top-left quarter holds a fraction f of the signal energy
    const Signal sig = gen_signal(SignalSpec{pp, n, PiecewiseConstant{t, std::sqrt(f)}});
    const Matrix Y = sig.X + noise_for(p.at("noise").get<std::string>(), pp, n, seed);

    std::vector<Index> rows(static_cast<std::size_t>(pp / 2));
    std::vector<Index> cols(static_cast<std::size_t>(n / 2));
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<Index>(i);
    for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = static_cast<Index>(j);
    const Matrix X0 = sig.X.topLeftCorner(pp / 2, n / 2);
    const double den = X0.norm();

    const PipelineResult alg = submatrix_denoise(Y, rows, cols);
    const PipelineResult base = shrink_submatrix_baseline(Y, rows, cols);
    const DenoiseResult global = svs_shrink(Y);
    const Matrix G0 = global.X_hat.topLeftCorner(pp / 2, n / 2);
    return {{"err_submatrix_denoise", (alg.estimate - X0).norm() / den},
            {"err_baseline", (base.estimate - X0).norm() / den},
            {"err_global_shrink", (G0 - X0).norm() / den},
            {"rank_full", static_cast<double>(alg.inner.spikes.rank())},
            {"rank_submatrix", static_cast<double>(base.inner.spikes.rank())}};
  }
};

// ---------------------------------------------------------------------------

class Heteroscedastic final : public Scenario {
 public:
  std::string name() const override { return "heteroscedastic"; }
  json defaults() const override {
    return {{"p", 500}, {"n", 1000}, {"kappa", {1.0, 10.0}}, {"rank", 5}, {"t_offset", 0.5}, {"estimated", true}};
  }
  void validate(const json& p) const override {
    const Index pp = get_dim(p, "p");
    const Index n = get_dim(p, "n");
    for (double k : get_doubles(p, "kappa")) {
      if (!(k >= 1.0)) throw InvalidArgument("kappa must be at least 1");
    }
    const Index r = get_dim(p, "rank", 1);
    if (r > std::min(pp, n)) throw InvalidArgument("rank exceeds the matrix dimensions");
    if (!(get_double(p, "t_offset") > 0.0)) throw InvalidArgument("t_offset must be positive");
    if (!p.at("estimated").is_boolean()) throw InvalidArgument("estimated must be a boolean");
  }
  json scaled(json p, double s) const override {
    p["p"] = scale_dim(get_dim(p, "p"), s, false);
    p["n"] = scale_dim(get_dim(p, "n"), s, false);
    return p;
  }
  std::vector<Point> points(const json& p) const override {
    std::vector<Point> out;
    for (double k : get_doubles(p, "kappa")) out.push_back({"kappa=" + fmt(k), {{"kappa", k}}});
    return out;
  }
  Metrics run(const json& p, const Point& pt, std::uint64_t seed) const override {
    const Index pp = get_dim(p, "p");
    const Index n = get_dim(p, "n");
    const Index r = get_dim(p, "rank", 1);
    const AspectRatio gamma = AspectRatio::of(pp, n);
    const double kappa = pt.values.at("kappa").get<double>();
    Vector t(r);
    for (Index k = 0; k < r; ++k) {
      t[k] = gamma.detection_threshold() + get_double(p, "t_offset") + static_cast<double>(r - 1 - k);
    }
    const Signal sig = gen_signal(SignalSpec{pp, n, RandomOrthonormal{t, derive_seed(seed, kSignalStream)}});
    const Vector s = linspace(1.0 / kappa, 1.0, pp);
    const Vector tt = linspace(1.0 / kappa, 1.0, n);
    const Matrix G = noise_for("gaussian", pp, n, seed);
    const Matrix Y = sig.X + s.cwiseSqrt().asDiagonal() * G * tt.cwiseSqrt().asDiagonal();
    const NoiseCovariances cov{Covariance::diagonal(s), Covariance::diagonal(tt)};

    const double den = sig.X.norm();
    const PipelineResult white = whiten_denoise(Y, cov);
    const DenoiseResult plain = svs_shrink(Y);
    const double ew = (white.estimate - sig.X).norm() / den;
    const double eu = (plain.X_hat - sig.X).norm() / den;
    Metrics m{{"err_whitened", ew}, {"err_unwhitened", eu}, {"gap", eu - ew}, {"tau", snr_gain_tau(cov)}};
    if (p.at("estimated").get<bool>()) {
      const PipelineResult est = whiten_denoise(Y, estimate_noise_covariances(Y));
      m.emplace_back("err_estimated", (est.estimate - sig.X).norm() / den);
    }
    return m;
  }
};

// ---------------------------------------------------------------------------

class MissingData final : public Scenario {
 public:
  std::string name() const override { return "missing-data"; }
  json defaults() const override {
    return {{"p", 200},          {"n", 400},        {"rank", 5},    {"q_range", {0.3, 0.7}},
            {"sigma", {0.5}},    {"margin", 0.1},   {"discrepancy_n", {400, 1600}}};
  }
  void validate(const json& p) const override {
    const Index pp = get_dim(p, "p");
    const Index n = get_dim(p, "n");
    const Index r = get_dim(p, "rank", 1);
    if (r > std::min(pp, n)) throw InvalidArgument("rank exceeds the matrix dimensions");
    const auto q = get_doubles(p, "q_range");
    if (q.size() != 2 || !(q[0] > 0.0 && q[0] <= q[1] && q[1] <= 1.0)) throw InvalidArgument("q_range must be [lo, hi] within (0, 1]");
    for (double s : get_doubles(p, "sigma")) {
      if (!(s > 0.0)) throw InvalidArgument("sigma must be positive");
    }
    if (!(get_double(p, "margin") >= 0.0)) throw InvalidArgument("margin must be nonnegative");
    for (Index d : get_dims(p, "discrepancy_n")) {
      if (d < 4) throw InvalidArgument("discrepancy_n entries must be at least 4");
    }
  }
  json scaled(json p, double s) const override {
    p["p"] = scale_dim(get_dim(p, "p"), s, false);
    p["n"] = scale_dim(get_dim(p, "n"), s, false);
    json ds = json::array();
    for (Index d : get_dims(p, "discrepancy_n")) ds.push_back(scale_dim(d, s, false));
    p["discrepancy_n"] = ds;
    return p;
  }
  std::vector<Point> points(const json& p) const override {
    std::vector<Point> out;
    for (double s : get_doubles(p, "sigma")) out.push_back({"sigma=" + fmt(s), {{"kind", "denoise"}, {"sigma", s}}});
    for (Index d : get_dims(p, "discrepancy_n")) {
      out.push_back({"discrepancy/n=" + std::to_string(d), {{"kind", "discrepancy"}, {"n", d}}});
    }
    return out;
  }

  static Vector singular_values(Index r, AspectRatio gamma) {
    Vector t(r);
    for (Index k = 0; k < r; ++k) t[k] = std::sqrt(std::sqrt(gamma.value()) + 200.0 * static_cast<double>(r - k));
    return t;
  }

  Metrics run(const json& p, const Point& pt, std::uint64_t seed) const override {
    const Index p0 = get_dim(p, "p");
    const Index n0 = get_dim(p, "n");
    const Index r = get_dim(p, "rank", 1);
    const auto q = get_doubles(p, "q_range");
    const AspectRatio gamma0 = AspectRatio::of(p0, n0);
    Index pp = p0;
    Index n = n0;
    if (pt.values.at("kind") == "discrepancy") {
      n = pt.values.at("n").get<Index>();
      pp = std::max<Index>(r, static_cast<Index>(std::llround(gamma0.value() * static_cast<double>(n))));
    }
    const Vector t = singular_values(r, gamma0);
    const Signal sig = gen_signal(SignalSpec{pp, n, RandomOrthonormal{t, derive_seed(seed, kSignalStream)}});
    const Vector qr = linspace(q[0], q[1], pp);
    const Vector qc = linspace(q[0], q[1], n);

    RandomStream mask_rng(derive_seed(seed, kMaskStream));
    SamplingPattern pat;
    pat.rows = pp;
    pat.cols = n;
    pat.q_row = qr;
    pat.q_col = qc;
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < pp; ++i) {
        if (mask_rng.uniform() < qr[i] * qc[j]) pat.observed.push_back({i, j, sig.X(i, j)});
      }
    }

    if (pt.values.at("kind") == "discrepancy") {
      const Matrix diff = backproject(pat) - qr.asDiagonal() * sig.X * qc.asDiagonal();
      const double target = operator_norm(qr.asDiagonal() * sig.X * qc.asDiagonal());
      const double d = operator_norm(diff);
      return {{"discrepancy_op", d}, {"relative_discrepancy", d / target}};
    }

    const double sigma = pt.values.at("sigma").get<double>();
    RandomStream noise_rng(derive_seed(seed, kNoiseStream));
    for (auto& e : pat.observed) e.value += sigma * noise_rng.normal();
    DenoiseOptions opts;
    opts.rank.margin = get_double(p, "margin");
    const PipelineResult res = missing_data_denoise(pat, sigma, opts);
    return {{"err", (res.estimate - sig.X).norm() / sig.X.norm()},
            {"rank", static_cast<double>(res.inner.spikes.rank())},
            {"observed_fraction", static_cast<double>(pat.observed.size()) / static_cast<double>(pp * n)}};
  }
};

}  // namespace

const std::vector<std::unique_ptr<Scenario>>& registry() {
  static const std::vector<std::unique_ptr<Scenario>> scenarios = [] {
    std::vector<std::unique_ptr<Scenario>> v;
    v.push_back(std::make_unique<LocalizedCheckerboard>());
    v.push_back(std::make_unique<Submatrix>());
    v.push_back(std::make_unique<Heteroscedastic>());
    v.push_back(std::make_unique<MissingData>());
    v.push_back(std::make_unique<WeightedInnerProducts>());
    v.push_back(std::make_unique<RankEstimation>());
    return v;
  }();
  return scenarios;
}

const Scenario& find_scenario(const std::string& name) {
  for (const auto& s : registry()) {
    if (s->name() == name) return *s;
  }
  std::string known;
  for (const auto& s : registry()) known += (known.empty() ? "" : ", ") + s->name();
  throw InvalidArgument("unknown scenario '" + name + "' (known: " + known + ")");
}

}  // namespace sdn::simlab::detail

#include "tha/gaussian.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace tha {

namespace {

void check_mode(const GaussianState& s, std::size_t mode) {
    if (mode >= s.n_modes()) {
        throw std::out_of_range("mode index " + std::to_string(mode) + " out of range for " +
                                std::to_string(s.n_modes()) + "-mode state");
    }
}

// Applies the symplectic matrix S (xxpp ordering) to mean and covariance.
GaussianState apply_symplectic(const GaussianState& s, const Mat& S) {
    return GaussianState(s.n_modes(), S * s.mean(), S * s.cov() * S.transpose());
}

}  // namespace

GaussianState::GaussianState(std::size_t n_modes, Vec mean, Mat cov)
    : n_(n_modes), mean_(std::move(mean)), cov_(std::move(cov)) {
    if (n_ == 0) throw std::invalid_argument("GaussianState needs at least one mode");
    const auto dim = static_cast<Eigen::Index>(2 * n_);
    if (mean_.size() != dim || cov_.rows() != dim || cov_.cols() != dim) {
        throw std::invalid_argument("GaussianState dimension mismatch");
    }
    const double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("covariance matrix is not symmetric");
    }
    cov_ = ((cov_ + cov_.transpose()) / 2.0).eval();
}

double GaussianState::physicality_margin() const {
    const auto dim = static_cast<Eigen::Index>(2 * n_);
    Eigen::MatrixXcd m = cov_.cast<std::complex<double>>();
    m += std::complex<double>(0, 1) * symplectic_form(n_).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    (void)dim;
    return es.eigenvalues().minCoeff();
}

bool GaussianState::is_physical(double tol) const { return physicality_margin() >= -tol; }

std::string GaussianState::debug_string() const {
    std::ostringstream os;
    os.precision(17);
    for (Eigen::Index i = 0; i < mean_.size(); ++i) os << mean_(i) << '\n';
    for (Eigen::Index r = 0; r < cov_.rows(); ++r)
        for (Eigen::Index c = 0; c < cov_.cols(); ++c) os << cov_(r, c) << '\n';
    return os.str();
}

Mat symplectic_form(std::size_t n_modes) {
    const auto n = static_cast<Eigen::Index>(n_modes);
    Mat omega = Mat::Zero(2 * n, 2 * n);
    omega.topRightCorner(n, n) = Mat::Identity(n, n);
    omega.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
    return omega;
}

GaussianState vacuum(std::size_t n_modes) {
    if (n_modes == 0) throw std::invalid_argument("vacuum: n_modes must be >= 1");
    const auto dim = static_cast<Eigen::Index>(2 * n_modes);
    return GaussianState(n_modes, Vec::Zero(dim), Mat::Identity(dim, dim));
}

GaussianState displace(const GaussianState& s, std::size_t mode, std::complex<double> alpha) {
    check_mode(s, mode);
    Vec mean = s.mean();
    mean(static_cast<Eigen::Index>(mode)) += 2.0 * alpha.real();
    mean(static_cast<Eigen::Index>(s.n_modes() + mode)) += 2.0 * alpha.imag();
    return GaussianState(s.n_modes(), mean, s.cov());
}

GaussianState phase_rotate(const GaussianState& s, std::size_t mode, double theta) {
    check_mode(s, mode);
    const auto n = static_cast<Eigen::Index>(s.n_modes());
    const auto x = static_cast<Eigen::Index>(mode);
    const auto p = n + x;
    Mat S = Mat::Identity(2 * n, 2 * n);
    const double c = std::cos(theta), sn = std::sin(theta);
    S(x, x) = c;
    S(x, p) = -sn;
    S(p, x) = sn;
    S(p, p) = c;
    return apply_symplectic(s, S);
}

GaussianState two_mode_squeeze(const GaussianState& s, std::size_t mode_i, std::size_t mode_j,
                               double xi) {
    check_mode(s, mode_i);
    check_mode(s, mode_j);
    if (mode_i == mode_j) throw std::invalid_argument("two_mode_squeeze: modes must differ");
    const auto n = static_cast<Eigen::Index>(s.n_modes());
    const auto xi_ = static_cast<Eigen::Index>(mode_i);
    const auto xj_ = static_cast<Eigen::Index>(mode_j);
    const auto pi_ = n + xi_;
    const auto pj_ = n + xj_;
    const double ch = std::cosh(xi), sh = std::sinh(xi);
    Mat S = Mat::Identity(2 * n, 2 * n);
    S(xi_, xi_) = ch;
    S(xi_, xj_) = sh;
    S(xj_, xi_) = sh;
    S(xj_, xj_) = ch;
    S(pi_, pi_) = ch;
    S(pi_, pj_) = -sh;
    S(pj_, pi_) = -sh;
    S(pj_, pj_) = ch;
    return apply_symplectic(s, S);
}

GaussianState pure_loss(const GaussianState& s, std::size_t mode, double eta) {
    check_mode(s, mode);
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("pure_loss: eta must be in [0,1]");
    const auto n = static_cast<Eigen::Index>(s.n_modes());
    const auto x = static_cast<Eigen::Index>(mode);
    const auto p = n + x;
    const double r = std::sqrt(eta);
    Vec d = Vec::Ones(2 * n);
    d(x) = r;
    d(p) = r;
    Vec mean = d.asDiagonal() * s.mean();
    Mat cov = d.asDiagonal() * s.cov() * d.asDiagonal();
    cov(x, x) += 1.0 - eta;
    cov(p, p) += 1.0 - eta;
    return GaussianState(s.n_modes(), mean, cov);
}

GaussianState add_thermal_additive(const GaussianState& s, std::size_t mode, double mu_t) {
    check_mode(s, mode);
    if (mu_t < 0.0) throw std::invalid_argument("add_thermal_additive: mu_T must be >= 0");
    const auto n = static_cast<Eigen::Index>(s.n_modes());
    const auto x = static_cast<Eigen::Index>(mode);
    Mat cov = s.cov();
    cov(x, x) += 2.0 * mu_t;
    cov(n + x, n + x) += 2.0 * mu_t;
    return GaussianState(s.n_modes(), s.mean(), cov);
}

GaussianState add_thermal_tms(const GaussianState& s, std::size_t mode, double mu_t) {
    check_mode(s, mode);
    if (mu_t < 0.0) throw std::invalid_argument("add_thermal_tms: mu_T must be >= 0");
    const auto n = s.n_modes();
    const auto dim_in = static_cast<Eigen::Index>(2 * n);
    // Attach a vacuum ancilla as the last mode.
    Vec mean = Vec::Zero(dim_in + 2);
    Mat cov = Mat::Identity(dim_in + 2, dim_in + 2);
    const auto ni = static_cast<Eigen::Index>(n);
    mean.head(ni) = s.mean().head(ni);
    mean.segment(ni + 1, ni) = s.mean().tail(ni);
    cov.block(0, 0, ni, ni) = s.cov().block(0, 0, ni, ni);
    cov.block(0, ni + 1, ni, ni) = s.cov().block(0, ni, ni, ni);
    cov.block(ni + 1, 0, ni, ni) = s.cov().block(ni, 0, ni, ni);
    cov.block(ni + 1, ni + 1, ni, ni) = s.cov().block(ni, ni, ni, ni);
    GaussianState ext(n + 1, mean, cov);
    const double xi_t = std::asinh(std::sqrt(mu_t));
    ext = two_mode_squeeze(ext, mode, n, xi_t);
    std::vector<std::size_t> keep(n);
    for (std::size_t k = 0; k < n; ++k) keep[k] = k;
    return partial_trace(ext, keep);
}

GaussianState partial_trace(const GaussianState& s, const std::vector<std::size_t>& keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
    for (auto m : keep) check_mode(s, m);
    const auto n_in = static_cast<Eigen::Index>(s.n_modes());
    const auto n_out = static_cast<Eigen::Index>(keep.size());
    std::vector<Eigen::Index> idx;
    idx.reserve(2 * keep.size());
    for (auto m : keep) idx.push_back(static_cast<Eigen::Index>(m));
    for (auto m : keep) idx.push_back(n_in + static_cast<Eigen::Index>(m));
    Vec mean(2 * n_out);
    Mat cov(2 * n_out, 2 * n_out);
    for (Eigen::Index r = 0; r < 2 * n_out; ++r) {
        mean(r) = s.mean()(idx[static_cast<std::size_t>(r)]);
        for (Eigen::Index c = 0; c < 2 * n_out; ++c) {
            cov(r, c) = s.cov()(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
        }
    }
    return GaussianState(keep.size(), mean, cov);
}

double mean_photons(const GaussianState& s, std::size_t mode) {
    check_mode(s, mode);
    const auto n = static_cast<Eigen::Index>(s.n_modes());
    const auto x = static_cast<Eigen::Index>(mode);
    const auto p = n + x;
    const double tr = s.cov()(x, x) + s.cov()(p, p);
    const double m2 = s.mean()(x) * s.mean()(x) + s.mean()(p) * s.mean()(p);
    return (tr + m2) / 4.0 - 0.5;
}

double fidelity(const GaussianState& s1, const GaussianState& s2) {
    if (s1.n_modes() != s2.n_modes()) {
        throw std::invalid_argument("fidelity: states must have equal mode counts");
    }
    if (!s1.is_physical() || !s2.is_physical()) {
        throw std::domain_error("fidelity: non-physical input state");
    }
    const auto n = static_cast<Eigen::Index>(s1.n_modes());

    // The closed form is stated in the convention with vacuum covariance 1/2
    // and mean sqrt(2)*(Re alpha, Im alpha); rescale both moments on entry.
    const Mat v1 = s1.cov() / 2.0;
    const Mat v2 = s2.cov() / 2.0;
    const Vec du = (s1.mean() - s2.mean()) / std::sqrt(2.0);

    const Mat vsum = v1 + v2;
    Eigen::FullPivLU<Mat> lu(vsum);
    if (!lu.isInvertible()) throw std::domain_error("fidelity: singular V1+V2");
    const Mat vinv = lu.inverse();
    {
        Eigen::JacobiSVD<Mat> svd(vsum);
        const double cond = svd.singularValues()(0) / svd.singularValues().tail(1)(0);
        if (!(cond < 1e12)) throw std::domain_error("fidelity: ill-conditioned V1+V2");
    }

    const Mat omega = symplectic_form(s1.n_modes());
    using CMat = Eigen::MatrixXcd;
    CMat w = std::complex<double>(0, -2) *
             (omega.transpose() * vinv * (omega / 4.0 + v2 * omega * v1) * omega)
                 .cast<std::complex<double>>();
    Eigen::ComplexEigenSolver<CMat> es(w, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw std::runtime_error("fidelity: eigensolver failed");

    // Eigenvalues come in +/- pairs; keep the n with positive real part.
    std::vector<std::complex<double>> evs(es.eigenvalues().data(),
                                          es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(evs.begin(), evs.end(),
              [](const auto& a, const auto& b) { return a.real() > b.real(); });
    double log_prod = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        double wk = evs[static_cast<std::size_t>(k)].real();
        if (wk < 1.0 && wk > 1.0 - 1e-9) wk = 1.0;  // pure-state degeneracy
        if (wk < 1.0) throw std::domain_error("fidelity: invalid auxiliary eigenvalue");
        log_prod += 0.5 * std::log(wk + std::sqrt(wk * wk - 1.0));
    }
    const double log_det = std::log(lu.determinant());
    const double quad = du.dot(vinv * du);
    const double f = std::exp(log_prod - 0.25 * log_det - 0.25 * quad);
    return std::min(std::max(f, 0.0), 1.0);
}

}  // namespace tha

#include "tha/fock.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace tha {

namespace {

using Complex = std::complex<double>;

CMat ladder(std::size_t cutoff) {
    const auto d = static_cast<Eigen::Index>(cutoff + 1);
    CMat a = CMat::Zero(d, d);
    for (Eigen::Index k = 1; k < d; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

// log of binomial coefficient; keeps Kraus weights finite at large cutoffs
double log_binom(std::size_t n, std::size_t k) {
    return std::lgamma(static_cast<double>(n + 1)) - std::lgamma(static_cast<double>(k + 1)) -
           std::lgamma(static_cast<double>(n - k + 1));
}

FockDensityMatrix renormalized(std::size_t cutoff, std::size_t n_modes, CMat m, double prior_leak) {
    const double tr = m.trace().real();
    if (tr <= 0.0) throw std::runtime_error("fock: state trace vanished after truncation");
    m /= tr;
    FockDensityMatrix out(cutoff, n_modes, std::move(m));
    out.add_leakage(prior_leak + (1.0 - tr));
    return out;
}

// Exchanges the two mode indices of a flattened two-mode matrix.
CMat mode_swap(const CMat& in, Eigen::Index d) {
    CMat out(in.rows(), in.cols());
    for (Eigen::Index i1 = 0; i1 < d; ++i1)
        for (Eigen::Index i2 = 0; i2 < d; ++i2)
            for (Eigen::Index j1 = 0; j1 < d; ++j1)
                for (Eigen::Index j2 = 0; j2 < d; ++j2)
                    out(i1 * d + i2, j1 * d + j2) = in(i2 * d + i1, j2 * d + j1);
    return out;
}

// Applies a single-mode channel given by its action on number-basis element
// pairs: out[m,n] += coef(k; m, n) * in[m+shift*k, n+shift*k].
template <typename CoefFn>
CMat mode_channel(const FockDensityMatrix& rho, std::size_t mode, int shift, CoefFn coef) {
    const auto d = static_cast<Eigen::Index>(rho.cutoff() + 1);
    const bool two = rho.n_modes() == 2;
    // index layout: two-mode basis |n0 n1> flattened as n0*d + n1; mode 1 is
    // handled by swapping it into the block position and back
    const CMat in = (two && mode == 1) ? mode_swap(rho.entries(), d) : rho.entries();
    CMat out = CMat::Zero(in.rows(), in.cols());
    for (Eigen::Index m = 0; m < d; ++m) {
        for (Eigen::Index n = 0; n < d; ++n) {
            const Eigen::Index kmax = shift > 0 ? d - 1 - std::max(m, n) : std::min(m, n);
            for (Eigen::Index k = 0; k <= kmax; ++k) {
                const double c = coef(static_cast<std::size_t>(k), static_cast<std::size_t>(m),
                                      static_cast<std::size_t>(n));
                if (c == 0.0) continue;
                const Eigen::Index ms = m + shift * k;
                const Eigen::Index ns = n + shift * k;
                if (!two) {
                    out(m, n) += c * in(ms, ns);
                } else {
                    out.block(m * d, n * d, d, d) += c * in.block(ms * d, ns * d, d, d);
                }
            }
        }
    }
    if (two && mode == 1) return mode_swap(out, d);
    return out;
}

CMat embed_one_mode(const CMat& u, std::size_t mode, std::size_t n_modes) {
    if (n_modes == 1) return u;
    const auto d = u.rows();
    CMat id = CMat::Identity(d, d);
    CMat out(d * d, d * d);
    const CMat& left = (mode == 0) ? u : id;
    const CMat& right = (mode == 0) ? id : u;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) out.block(i * d, j * d, d, d) = left(i, j) * right;
    return out;
}

// U rho U^dag for U = u acting on one mode of a two-mode state, using the
// Kronecker block structure instead of dense D x D products.
CMat conjugate_one_mode(const CMat& u, const CMat& rho, std::size_t mode) {
    const auto d = u.rows();
    const auto dim = rho.rows();
    CMat tmp = CMat::Zero(dim, dim);
    if (mode == 0) {
        for (Eigen::Index ip = 0; ip < d; ++ip)
            for (Eigen::Index i = 0; i < d; ++i) {
                if (u(ip, i) != 0.0) tmp.middleRows(ip * d, d) += u(ip, i) * rho.middleRows(i * d, d);
            }
        CMat out = CMat::Zero(dim, dim);
        for (Eigen::Index jp = 0; jp < d; ++jp)
            for (Eigen::Index j = 0; j < d; ++j) {
                const auto c = std::conj(u(jp, j));
                if (c != 0.0) out.middleCols(jp * d, d) += c * tmp.middleCols(j * d, d);
            }
        return out;
    }
    for (Eigen::Index a = 0; a < d; ++a) tmp.middleRows(a * d, d) = u * rho.middleRows(a * d, d);
    CMat out(dim, dim);
    for (Eigen::Index b = 0; b < d; ++b)
        out.middleCols(b * d, d) = tmp.middleCols(b * d, d) * u.adjoint();
    return out;
}

}  // namespace

FockDensityMatrix::FockDensityMatrix(std::size_t cutoff, std::size_t n_modes, CMat entries)
    : cutoff_(cutoff), n_modes_(n_modes), entries_(std::move(entries)) {
    if (n_modes_ != 1 && n_modes_ != 2) {
        throw std::invalid_argument("FockDensityMatrix supports 1 or 2 modes");
    }
    const auto d = static_cast<Eigen::Index>(cutoff_ + 1);
    const auto dim = n_modes_ == 1 ? d : d * d;
    if (entries_.rows() != dim || entries_.cols() != dim) {
        throw std::invalid_argument("FockDensityMatrix dimension mismatch");
    }
}

std::string FockDensityMatrix::debug_string() const {
    std::ostringstream os;
    os.precision(17);
    for (Eigen::Index r = 0; r < entries_.rows(); ++r)
        for (Eigen::Index c = 0; c < entries_.cols(); ++c)
            os << entries_(r, c).real() << ' ' << entries_(r, c).imag() << '\n';
    return os.str();
}

FockDensityMatrix fock_vacuum(std::size_t cutoff, std::size_t n_modes) {
    const auto d = static_cast<Eigen::Index>(cutoff + 1);
    const auto dim = n_modes == 1 ? d : d * d;
    CMat m = CMat::Zero(dim, dim);
    m(0, 0) = 1.0;
    return FockDensityMatrix(cutoff, n_modes, std::move(m));
}

FockDensityMatrix coherent_fock(std::complex<double> alpha, std::size_t cutoff) {
    if (std::norm(alpha) > static_cast<double>(cutoff) / 4.0) {
        throw std::invalid_argument("coherent_fock: |alpha|^2 exceeds cutoff/4 leakage guard");
    }
    const auto d = static_cast<Eigen::Index>(cutoff + 1);
    CVec psi(d);
    // |alpha> = e^{-|a|^2/2} sum alpha^n/sqrt(n!) |n>
    double log_norm = -0.5 * std::norm(alpha);
    psi(0) = std::exp(log_norm);
    for (Eigen::Index n = 1; n < d; ++n) {
        psi(n) = psi(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    }
    CMat m = psi * psi.adjoint();
    return renormalized(cutoff, 1, std::move(m), 0.0);
}

FockDensityMatrix apply_unitary_generator(const FockDensityMatrix& rho, Generator gen,
                                          std::complex<double> parameter, std::size_t mode) {
    if (mode >= rho.n_modes()) throw std::out_of_range("apply_unitary_generator: bad mode");
    const auto d = static_cast<Eigen::Index>(rho.cutoff() + 1);
    const CMat a = ladder(rho.cutoff());
    CMat u1;  // single-mode unitary for phase/displacement
    switch (gen) {
        case Generator::Phase: {
            // exp(i theta n) is diagonal; build it directly
            u1 = CMat::Zero(d, d);
            for (Eigen::Index n = 0; n < d; ++n) {
                u1(n, n) = std::exp(Complex(0, 1) * parameter * static_cast<double>(n));
            }
            break;
        }
        case Generator::Displacement: {
            CMat g = parameter * a.adjoint() - std::conj(parameter) * a;
            u1 = g.exp();
            break;
        }
        case Generator::TwoModeSqueeze: {
            if (rho.n_modes() != 2) {
                throw std::invalid_argument("two-mode squeeze needs a two-mode state");
            }
            CMat A = embed_one_mode(a, 0, 2);
            CMat B = embed_one_mode(a, 1, 2);
            CMat g = parameter * (A.adjoint() * B.adjoint()) - std::conj(parameter) * (A * B);
            CMat u = g.exp();
            CMat m = u * rho.entries() * u.adjoint();
            return renormalized(rho.cutoff(), rho.n_modes(), std::move(m), rho.leakage());
        }
        default:
            throw std::invalid_argument("unsupported generator");
    }
    CMat m = rho.n_modes() == 1 ? CMat(u1 * rho.entries() * u1.adjoint())
                                : conjugate_one_mode(u1, rho.entries(), mode);
    return renormalized(rho.cutoff(), rho.n_modes(), std::move(m), rho.leakage());
}

FockDensityMatrix attenuate_kraus(const FockDensityMatrix& rho, double eta, std::size_t mode) {
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("attenuate_kraus: eta out of [0,1]");
    if (mode >= rho.n_modes()) throw std::out_of_range("attenuate_kraus: bad mode");
    if (eta == 1.0) return rho;
    const double log_eta = eta > 0.0 ? std::log(eta) : 0.0;
    const double log_1me = std::log1p(-eta);
    auto coef = [&](std::size_t k, std::size_t m, std::size_t n) {
        if (eta == 0.0) return (m == 0 && n == 0) ? 1.0 : 0.0;  // handled via k-sum below
        const double lg = 0.5 * (log_binom(m + k, k) + log_binom(n + k, k)) +
                          0.5 * static_cast<double>(m + n) * log_eta +
                          static_cast<double>(k) * log_1me;
        return std::exp(lg);
    };
    if (eta == 0.0) {
        // full loss: everything collapses to vacuum on that mode
        const auto d = static_cast<Eigen::Index>(rho.cutoff() + 1);
        const CMat& in = rho.entries();
        CMat out = CMat::Zero(in.rows(), in.cols());
        if (rho.n_modes() == 1) {
            out(0, 0) = in.trace();
        } else if (mode == 0) {
            for (Eigen::Index k = 0; k < d; ++k) out.block(0, 0, d, d) += in.block(k * d, k * d, d, d);
        } else {
            for (Eigen::Index a = 0; a < d; ++a)
                for (Eigen::Index b = 0; b < d; ++b)
                    for (Eigen::Index k = 0; k < d; ++k) out(a * d, b * d) += in(a * d + k, b * d + k);
        }
        return renormalized(rho.cutoff(), rho.n_modes(), std::move(out), rho.leakage());
    }
    CMat out = mode_channel(rho, mode, +1, coef);
    return renormalized(rho.cutoff(), rho.n_modes(), std::move(out), rho.leakage());
}

FockDensityMatrix amplify_kraus(const FockDensityMatrix& rho, double gain, std::size_t mode) {
    if (gain < 1.0) throw std::invalid_argument("amplify_kraus: gain must be >= 1");
    if (mode >= rho.n_modes()) throw std::out_of_range("amplify_kraus: bad mode");
    if (gain == 1.0) return rho;
    const double g = std::acosh(std::sqrt(gain));
    const double log_t = std::log(std::tanh(g));
    const double log_c = std::log(std::cosh(g));
    auto coef = [&](std::size_t k, std::size_t m, std::size_t n) {
        // A_k |n> ~ sqrt(C(n+k,k)) tanh^k cosh^{-(n+1)} |n+k>, here applied backwards
        const double lg = 0.5 * (log_binom(m, k) + log_binom(n, k)) +
                          2.0 * static_cast<double>(k) * log_t -
                          static_cast<double>((m - k) + (n - k) + 2) * log_c;
        return std::exp(lg);
    };
    CMat out = mode_channel(rho, mode, -1, coef);
    return renormalized(rho.cutoff(), rho.n_modes(), std::move(out), rho.leakage());
}

FockDensityMatrix add_thermal_fock(const FockDensityMatrix& rho, double mu, std::size_t mode) {
    if (mu < 0.0) throw std::invalid_argument("add_thermal_fock: mu must be >= 0");
    if (mu == 0.0) return rho;
    auto tmp = attenuate_kraus(rho, 1.0 / (1.0 + mu), mode);
    return amplify_kraus(tmp, 1.0 + mu, mode);
}

FockDensityMatrix tmsv_fock(double xi, std::size_t cutoff) {
    const auto d = static_cast<Eigen::Index>(cutoff + 1);
    const double lam = std::tanh(xi);
    CVec psi = CVec::Zero(d * d);
    double amp = 1.0;
    for (Eigen::Index n = 0; n < d; ++n) {
        psi(n * d + n) = amp;
        amp *= lam;
    }
    psi /= psi.norm();
    CMat m = psi * psi.adjoint();
    FockDensityMatrix out(cutoff, 2, std::move(m));
    // Schmidt weights beyond the cutoff
    out.add_leakage(std::pow(lam * lam, static_cast<double>(d)));
    return out;
}

FockDensityMatrix partial_trace_fock(const FockDensityMatrix& rho, std::size_t keep_mode) {
    if (rho.n_modes() != 2) throw std::invalid_argument("partial_trace_fock: need two modes");
    if (keep_mode > 1) throw std::out_of_range("partial_trace_fock: bad mode");
    const auto d = static_cast<Eigen::Index>(rho.cutoff() + 1);
    const CMat& in = rho.entries();
    CMat out = CMat::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            Complex acc = 0.0;
            for (Eigen::Index k = 0; k < d; ++k) {
                acc += keep_mode == 0 ? in(i * d + k, j * d + k) : in(k * d + i, k * d + j);
            }
            out(i, j) = acc;
        }
    }
    FockDensityMatrix res(rho.cutoff(), 1, std::move(out));
    res.add_leakage(rho.leakage());
    return res;
}

double uhlmann_fidelity(const FockDensityMatrix& rho1, const FockDensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim()) {
        throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
    }
    // F = sum_i sqrt(lambda_i(rho1 rho2)) = sum_i sqrt(eig(X^dag rho2 X)) for
    // any factorization rho1 = X X^dag; the pivoted LDLT gives X = P L sqrt(D)
    // without an eigenvector computation.
    Eigen::LDLT<CMat> ldlt(rho1.entries());
    // NumericalIssue flags the zero pivots every rank-deficient density
    // matrix has; the pivoted factorization itself remains valid for PSD
    // input, and genuine indefiniteness is caught by the D-entry guard below.
    if (ldlt.info() != Eigen::Success && ldlt.info() != Eigen::NumericalIssue) {
        throw std::runtime_error("uhlmann_fidelity: LDLT failed");
    }
    Eigen::VectorXd dvec = ldlt.vectorD().real();
    for (Eigen::Index i = 0; i < dvec.size(); ++i) {
        if (dvec(i) < 0.0) {
            if (dvec(i) < -1e-8) throw std::domain_error("uhlmann_fidelity: input not PSD");
            dvec(i) = 0.0;
        }
    }
    CMat x = ldlt.matrixL();
    x = ldlt.transpositionsP().transpose() * x;
    x *= dvec.cwiseSqrt().asDiagonal();
    CMat m = x.adjoint() * rho2.entries() * x;
    m = ((m + m.adjoint()) / 2.0).eval();
    Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("uhlmann_fidelity: eigh failed");
    // Rank-deficient products leave eigensolver noise around zero; summing
    // sqrt of that noise costs ~dim * 1e-8, so floor it relative to the top.
    const double floor = 1e-14 * std::max(es.eigenvalues().maxCoeff(), 0.0);
    double f = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double lam = es.eigenvalues()(i);
        if (lam > floor) f += std::sqrt(lam);
    }
    return std::min(std::max(f, 0.0), 1.0);
}

PhotonStatistics photon_statistics(const FockDensityMatrix& rho) {
    if (rho.n_modes() != 1) throw std::invalid_argument("photon_statistics: single mode only");
    const auto d = static_cast<Eigen::Index>(rho.cutoff() + 1);
    PhotonStatistics st{0.0, 0.0, {}};
    st.diagonal.resize(static_cast<std::size_t>(d));
    double n2 = 0.0;
    for (Eigen::Index n = 0; n < d; ++n) {
        const double p = rho.entries()(n, n).real();
        st.diagonal[static_cast<std::size_t>(n)] = p;
        st.mean += static_cast<double>(n) * p;
        n2 += static_cast<double>(n) * static_cast<double>(n) * p;
    }
    st.variance_v = n2 - st.mean;
    return st;
}

}  // namespace tha

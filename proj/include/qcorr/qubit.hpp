#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "qcorr/bounds.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/prob.hpp"

namespace qcorr {

namespace detail {

constexpr double kHermTol = 1e-10;
constexpr double kPsdTol = 1e-9;

template <std::size_t N>
inline void check_density(const Matrix<N>& m, const char* what) {
    if (!is_hermitian(m, kHermTol)) {
        std::ostringstream os;
        os << what << ": matrix is not Hermitian";
        throw validation_error(os.str());
    }
    const cplx tr = trace(m);
    if (std::abs(tr - 1.0) > kNormTol) {
        std::ostringstream os;
        os << what << ": trace is " << tr.real() << ", not 1";
        throw validation_error(os.str());
    }
    const auto eig = hermitian_eigenvalues(m);
    if (eig.front() < -kPsdTol) {
        std::ostringstream os;
        os << what << ": negative eigenvalue " << eig.front();
        throw validation_error(os.str());
    }
}

// Shannon entropy of an eigenvalue spectrum, clipping values in
// [-1e-9, 0) to zero.
template <std::size_t N>
inline double spectrum_entropy_nats(const std::array<double, N>& eig) {
    double h = 0.0;
    for (double p : eig)
        if (p > 0.0) h -= p * std::log(p);
    return h;
}

} // namespace detail

// 4x4 density operator of two qubits; basis |00>, |01>, |10>, |11> with
// qubit A the left tensor factor. Hermiticity, unit trace and positivity
// are enforced on construction.
class TwoQubitState {
public:
    explicit TwoQubitState(const Mat4& rho) : rho_(rho) {
        detail::check_density(rho_, "TwoQubitState");
    }
    const Mat4& matrix() const { return rho_; }

private:
    Mat4 rho_;
};

enum class Side { A, B };

inline Mat2 partial_trace(const TwoQubitState& state, Side side) {
    const Mat4& r = state.matrix();
    Mat2 m;
    if (side == Side::A) {
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                m(i, j) = r(2 * i, 2 * j) + r(2 * i + 1, 2 * j + 1);
    } else {
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t l = 0; l < 2; ++l)
                m(k, l) = r(k, l) + r(2 + k, 2 + l);
    }
    return m;
}

// Bloch vector of a single-qubit density matrix.
inline Vec3 bloch_vector(const Mat2& rho) {
    Vec3 u;
    for (int k = 1; k <= 3; ++k)
        u[static_cast<std::size_t>(k - 1)] = trace_product(rho, pauli(k)).real();
    return u;
}

// Single-qubit density matrix (I + w.sigma)/2 for |w| <= 1.
inline Mat2 qubit_from_bloch(const Vec3& w) {
    if (norm(w) > 1.0 + detail::kNormTol)
        throw domain_error("qubit_from_bloch: Bloch vector longer than 1");
    Mat2 m = Mat2::identity();
    m *= 0.5;
    for (int k = 1; k <= 3; ++k) {
        Mat2 s = pauli(k);
        s *= 0.5 * w[static_cast<std::size_t>(k - 1)];
        m += s;
    }
    return m;
}

// Fano decomposition: Bloch vectors u, v, correlation matrix
// M_jk = <sigma_j x sigma_k> and covariance matrix T = M - u v^T.
struct FanoForm {
    Vec3 u{};
    Vec3 v{};
    Mat3 m{};
    Mat3 t{};
};

inline FanoForm fano_decompose(const TwoQubitState& state) {
    const Mat4& rho = state.matrix();
    FanoForm f;
    const Mat2 id = Mat2::identity();
    for (int j = 1; j <= 3; ++j) {
        const std::size_t js = static_cast<std::size_t>(j - 1);
        f.u[js] = trace_product(rho, kron(pauli(j), id)).real();
        f.v[js] = trace_product(rho, kron(id, pauli(j))).real();
        for (int k = 1; k <= 3; ++k)
            f.m[js][static_cast<std::size_t>(k - 1)] =
                trace_product(rho, kron(pauli(j), pauli(k))).real();
    }
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) f.t[j][k] = f.m[j][k] - f.u[j] * f.v[k];
    return f;
}

// Rebuild the density matrix from Fano coefficients (u, v, M). The result
// is Hermitian with unit trace by construction but need not be positive;
// coefficients producing a negative eigenvalue are rejected.
inline TwoQubitState fano_compose(const FanoForm& f) {
    Mat4 rho = Mat4::identity();
    for (int j = 1; j <= 3; ++j) {
        const std::size_t js = static_cast<std::size_t>(j - 1);
        Mat4 a = kron(pauli(j), Mat2::identity());
        a *= f.u[js];
        rho += a;
        Mat4 b = kron(Mat2::identity(), pauli(j));
        b *= f.v[js];
        rho += b;
        for (int k = 1; k <= 3; ++k) {
            Mat4 c = kron(pauli(j), pauli(k));
            c *= f.m[js][static_cast<std::size_t>(k - 1)];
            rho += c;
        }
    }
    rho *= 0.25;
    const auto eig = hermitian_eigenvalues(rho);
    if (eig.front() < -detail::kPsdTol) {
        std::ostringstream os;
        os << "unphysical Fano coefficients: eigenvalue " << eig.front();
        throw unphysical_error(os.str());
    }
    return TwoQubitState(rho);
}

// Ordered singular values of the covariance matrix plus the sign of its
// determinant: alpha = +1 iff det T >= 0. (For t3 = 0 either sign yields
// locally-unitarily equivalent states; the convention fixes determinism.)
struct SingularTriple {
    double t1 = 0.0;
    double t2 = 0.0;
    double t3 = 0.0;
    int alpha = 1;
};

inline SingularTriple singular_triple(const Mat3& t) {
    Matrix<3> g;  // T T^T, symmetric
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k) s += t[i][k] * t[j][k];
            g(i, j) = s;
        }
    auto eig = hermitian_eigenvalues(g);  // ascending
    SingularTriple out;
    double sv[3];
    for (int i = 0; i < 3; ++i) {
        double e = eig[static_cast<std::size_t>(i)];
        if (e < -detail::kNegativeClip)
            throw consistency_error("singular_triple: T T^T has a negative eigenvalue");
        sv[i] = std::sqrt(std::max(e, 0.0));
    }
    out.t1 = sv[2];
    out.t2 = sv[1];
    out.t3 = sv[0];
    out.alpha = det3(t) >= 0.0 ? 1 : -1;
    return out;
}

inline double von_neumann_entropy(const Mat2& rho, Unit unit = Unit::bits) {
    detail::check_density(rho, "von_neumann_entropy");
    auto eig = hermitian_eigenvalues(rho);
    for (double& e : eig) e = std::max(e, 0.0);
    return from_nats(detail::spectrum_entropy_nats(eig), unit);
}

inline double von_neumann_entropy(const Mat4& rho, Unit unit = Unit::bits) {
    detail::check_density(rho, "von_neumann_entropy");
    auto eig = hermitian_eigenvalues(rho);
    for (double& e : eig) e = std::max(e, 0.0);
    return from_nats(detail::spectrum_entropy_nats(eig), unit);
}

inline double von_neumann_entropy(const TwoQubitState& state, Unit unit = Unit::bits) {
    auto eig = hermitian_eigenvalues(state.matrix());
    for (double& e : eig) e = std::max(e, 0.0);
    return from_nats(detail::spectrum_entropy_nats(eig), unit);
}

// I = S(rho_A) + S(rho_B) - S(rho_AB).
inline double mutual_information(const TwoQubitState& state, Unit unit = Unit::bits) {
    auto ea = hermitian_eigenvalues(partial_trace(state, Side::A));
    auto eb = hermitian_eigenvalues(partial_trace(state, Side::B));
    auto eab = hermitian_eigenvalues(state.matrix());
    for (double& e : ea) e = std::max(e, 0.0);
    for (double& e : eb) e = std::max(e, 0.0);
    for (double& e : eab) e = std::max(e, 0.0);
    return from_nats(detail::spectrum_entropy_nats(ea) +
                         detail::spectrum_entropy_nats(eb) -
                         detail::spectrum_entropy_nats(eab),
                     unit);
}

// Correlation distance tr|rho - rho_A x rho_B|, cross-checked against the
// singular-value expression max{t1+t2+t3, 2 t1}/2.
inline double correlation_distance(const TwoQubitState& state) {
    const Mat4 prod = kron(partial_trace(state, Side::A), partial_trace(state, Side::B));
    const double viaTraceNorm = trace_norm(state.matrix() - prod);
    const SingularTriple s = singular_triple(fano_decompose(state).t);
    const double viaSingular = 0.5 * std::max(s.t1 + s.t2 + s.t3, 2.0 * s.t1);
    if (std::abs(viaTraceNorm - viaSingular) > detail::kNormTol) {
        std::ostringstream os;
        os << "correlation_distance: trace-norm route " << viaTraceNorm
           << " disagrees with singular-value route " << viaSingular;
        throw consistency_error(os.str());
    }
    return viaTraceNorm;
}

// Partial transpose on qubit B.
inline Mat4 partial_transpose(const Mat4& rho) {
    Mat4 pt;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    pt(2 * i + k, 2 * j + l) = rho(2 * i + l, 2 * j + k);
    return pt;
}

// Entanglement criteria in decreasing strength of implication:
// C > 1  =>  C > rhs  =>  t1+t2+t3 > rhs  =>  negative partial transpose,
// where rhs = 2 sqrt((1 - tr rho_A^2)(1 - tr rho_B^2)).
struct EntanglementReport {
    double cdist = 0.0;
    double covariance_sum = 0.0;       // t1 + t2 + t3
    double separable_rhs = 0.0;        // bound satisfied by all separable states
    double min_ppt_eigenvalue = 0.0;   // smallest eigenvalue of the partial transpose
    bool cdist_gt_one = false;
    bool purity_criterion = false;
    bool covariance_criterion = false;
    bool ppt_entangled = false;
};

inline EntanglementReport entanglement_report(const TwoQubitState& state) {
    EntanglementReport rep;
    const Mat2 ra = partial_trace(state, Side::A);
    const Mat2 rb = partial_trace(state, Side::B);
    double pa = 0.0, pb = 0.0;  // purities
    for (const auto& x : ra.a) pa += std::norm(x);
    for (const auto& x : rb.a) pb += std::norm(x);
    rep.separable_rhs =
        2.0 * std::sqrt(std::max(1.0 - pa, 0.0) * std::max(1.0 - pb, 0.0));
    rep.cdist = correlation_distance(state);
    const SingularTriple s = singular_triple(fano_decompose(state).t);
    rep.covariance_sum = s.t1 + s.t2 + s.t3;
    rep.min_ppt_eigenvalue =
        hermitian_eigenvalues(partial_transpose(state.matrix())).front();
    rep.cdist_gt_one = rep.cdist > 1.0;
    rep.purity_criterion = rep.cdist > rep.separable_rhs;
    rep.covariance_criterion = rep.covariance_sum > rep.separable_rhs;
    rep.ppt_entangled = rep.min_ppt_eigenvalue < -detail::kPsdTol;
    return rep;
}

// --- state families ---------------------------------------------------

// Closed-form eigenvalues of (1/4)[I x I + sum_j r_j sigma_j x sigma_j].
inline std::array<double, 4> bell_diagonal_eigenvalues(double r1, double r2,
                                                       double r3) {
    return {0.25 * (1.0 - r1 - r2 - r3), 0.25 * (1.0 - r1 + r2 + r3),
            0.25 * (1.0 + r1 - r2 + r3), 0.25 * (1.0 + r1 + r2 - r3)};
}

inline TwoQubitState make_bell_diagonal(double r1, double r2, double r3) {
    const auto p = bell_diagonal_eigenvalues(r1, r2, r3);
    for (double e : p)
        if (e < -detail::kNegativeClip) {
            std::ostringstream os;
            os << "make_bell_diagonal: eigenvalue " << e << " is negative";
            throw unphysical_error(os.str());
        }
    Mat4 rho = Mat4::identity();
    const double r[3] = {r1, r2, r3};
    for (int j = 1; j <= 3; ++j) {
        Mat4 c = kron(pauli(j), pauli(j));
        c *= r[j - 1];
        rho += c;
    }
    rho *= 0.25;
    return TwoQubitState(rho);
}

// Werner state p |psi><psi| + (1-p)/4 I x I with the singlet |psi>,
// p in [-1/3, 1]. Equals the Bell-diagonal state with r = (-p, -p, -p).
inline TwoQubitState make_werner(double p) {
    if (p < -1.0 / 3.0 - detail::kNegativeClip || p > 1.0 + detail::kNegativeClip)
        throw domain_error("make_werner: p must lie in [-1/3, 1]");
    return make_bell_diagonal(-p, -p, -p);
}

// State attaining the quantum bound at correlation distance C in [0, 3/2]:
// (1/4)[I x I + C sigma_1 x sigma_1] (separable) up to C0, the Werner
// state with p = 2C/3 (entangled) beyond.
inline TwoQubitState make_saturating(double c) {
    if (c < -detail::kNegativeClip || c > 1.5 + detail::kNegativeClip)
        throw domain_error("make_saturating: C must lie in [0, 3/2]");
    c = std::clamp(c, 0.0, 1.5);
    if (c <= c0()) return make_bell_diagonal(c, 0.0, 0.0);
    return make_werner(2.0 * c / 3.0);
}

inline TwoQubitState make_product(const Vec3& u, const Vec3& v) {
    return TwoQubitState(kron(qubit_from_bloch(u), qubit_from_bloch(v)));
}

// Projector onto the spin-up (m = 0) or spin-down (m = 1) eigenstate of
// axis.sigma.
inline Mat2 spin_projector(const Vec3& axis, int m) {
    Mat2 p = Mat2::identity();
    p *= 0.5;
    const double sign = m == 0 ? 0.5 : -0.5;
    for (int k = 1; k <= 3; ++k) {
        Mat2 s = pauli(k);
        s *= sign * axis[static_cast<std::size_t>(k - 1)];
        p += s;
    }
    return p;
}

// Classically correlated state sum_jk P(j,k) |j><j| x |k><k| with the
// local bases given by spin axes (computational basis when omitted).
inline TwoQubitState make_classically_correlated(const JointTable& table,
                                                 const Vec3& basis_a = {0, 0, 1},
                                                 const Vec3& basis_b = {0, 0, 1}) {
    if (table.rows() != 2 || table.cols() != 2)
        throw validation_error("make_classically_correlated: table is not 2x2");
    if (std::abs(norm(basis_a) - 1.0) > 1e-12 || std::abs(norm(basis_b) - 1.0) > 1e-12)
        throw domain_error("make_classically_correlated: basis axes must be unit vectors");
    Mat4 rho;
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
            Mat4 term = kron(spin_projector(basis_a, j), spin_projector(basis_b, k));
            term *= table(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
            rho += term;
        }
    return TwoQubitState(rho);
}

// Haar average over U x U conjugations, evaluated exactly on the Fano
// coefficients: u, v -> 0 and M -> (tr M / 3) I.
inline TwoQubitState twirl(const TwoQubitState& state) {
    FanoForm f = fano_decompose(state);
    const double mbar = (f.m[0][0] + f.m[1][1] + f.m[2][2]) / 3.0;
    FanoForm g;
    for (std::size_t j = 0; j < 3; ++j) g.m[j][j] = mbar;
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) g.t[j][k] = g.m[j][k];
    return fano_compose(g);
}

// rho' = rho - rho_A x rho_B + (1/4) I x I. Hermitian with unit trace by
// construction, but possibly indefinite; a non-positive result is reported
// rather than treated as an error.
struct ConjectureShift {
    std::optional<TwoQubitState> state;  // present iff rho' is positive
    double min_eigenvalue = 0.0;
};

inline ConjectureShift conjecture_shift(const TwoQubitState& state) {
    Mat4 shifted = state.matrix() -
                   kron(partial_trace(state, Side::A), partial_trace(state, Side::B));
    Mat4 id = Mat4::identity();
    id *= 0.25;
    shifted += id;
    ConjectureShift out;
    out.min_eigenvalue = hermitian_eigenvalues(shifted).front();
    if (out.min_eigenvalue >= -detail::kPsdTol) out.state.emplace(shifted);
    return out;
}

// Projective spin measurement directions for the two sides.
struct ProjectivePair {
    Vec3 a_axis{0, 0, 1};
    Vec3 b_axis{0, 0, 1};
};

// Born-rule outcome table P(m, n) = tr[rho Pi_m^a x Pi_n^b], with outcome
// index 0 <-> spin up along the axis.
inline JointTable measure_projective(const TwoQubitState& state,
                                     const ProjectivePair& pair) {
    if (std::abs(norm(pair.a_axis) - 1.0) > 1e-12 ||
        std::abs(norm(pair.b_axis) - 1.0) > 1e-12)
        throw domain_error("measure_projective: axes must be unit vectors");
    std::vector<double> p(4);
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n)
            p[static_cast<std::size_t>(m * 2 + n)] =
                trace_product(state.matrix(), kron(spin_projector(pair.a_axis, m),
                                                   spin_projector(pair.b_axis, n)))
                    .real();
    return JointTable(2, 2, std::move(p));
}

// Conjugate by a product unitary ua x ub.
inline TwoQubitState apply_local_unitaries(const TwoQubitState& state, const Mat2& ua,
                                           const Mat2& ub) {
    const Mat4 u = kron(ua, ub);
    return TwoQubitState(mul(mul(u, state.matrix()), adjoint(u)));
}

// Rotation by angle about axis: cos(a/2) I - i sin(a/2) axis.sigma.
inline Mat2 rotation_unitary(const Vec3& axis, double angle) {
    if (std::abs(norm(axis) - 1.0) > 1e-12)
        throw domain_error("rotation_unitary: axis must be a unit vector");
    Mat2 u = Mat2::identity();
    u *= std::cos(angle / 2.0);
    for (int k = 1; k <= 3; ++k) {
        Mat2 s = pauli(k);
        s *= cplx(0.0, -std::sin(angle / 2.0)) * axis[static_cast<std::size_t>(k - 1)];
        u += s;
    }
    return u;
}

} // namespace qcorr

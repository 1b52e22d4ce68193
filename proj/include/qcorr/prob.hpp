#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "qcorr/errors.hpp"

namespace qcorr {

enum class Unit { bits, nats };

// All entropic quantities are computed in nats and converted once on output.
inline double from_nats(double nats, Unit unit) {
    return unit == Unit::bits ? nats / std::numbers::ln2 : nats;
}

namespace detail {

constexpr double kNegativeClip = 1e-12;  // weights in [-1e-12, 0) are noise
constexpr double kNormTol = 1e-9;

inline double clip_weight(double w, const char* what) {
    if (w < -kNegativeClip) {
        std::ostringstream os;
        os << what << ": negative entry " << w;
        throw validation_error(os.str());
    }
    return w < 0.0 ? 0.0 : w;
}

// -sum p ln p with the 0 ln 0 := 0 convention.
inline double entropy_nats(const double* p, std::size_t n) {
    double h = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (p[i] > 0.0) h -= p[i] * std::log(p[i]);
    }
    return h;
}

} // namespace detail

// Finite probability distribution. Entries are clipped to zero within
// 1e-12 below zero and must sum to one within 1e-9.
class ProbVector {
public:
    explicit ProbVector(std::vector<double> weights) : w_(std::move(weights)) {
        if (w_.empty()) throw validation_error("ProbVector: empty");
        double sum = 0.0;
        for (double& x : w_) {
            x = detail::clip_weight(x, "ProbVector");
            sum += x;
        }
        if (std::abs(sum - 1.0) > detail::kNormTol) {
            std::ostringstream os;
            os << "ProbVector: weights sum to " << sum << ", not 1";
            throw validation_error(os.str());
        }
    }
    ProbVector(std::initializer_list<double> weights)
        : ProbVector(std::vector<double>(weights)) {}

    std::size_t size() const { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }
    const std::vector<double>& weights() const { return w_; }

private:
    std::vector<double> w_;
};

// Joint probability table over an n x m alphabet, row-major.
class JointTable {
public:
    JointTable(std::size_t rows, std::size_t cols, std::vector<double> probs)
        : rows_(rows), cols_(cols), p_(std::move(probs)) {
        if (rows_ == 0 || cols_ == 0 || p_.size() != rows_ * cols_)
            throw validation_error("JointTable: shape mismatch");
        double sum = 0.0;
        for (double& x : p_) {
            x = detail::clip_weight(x, "JointTable");
            sum += x;
        }
        if (std::abs(sum - 1.0) > detail::kNormTol) {
            std::ostringstream os;
            os << "JointTable: entries sum to " << sum << ", not 1";
            throw validation_error(os.str());
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double operator()(std::size_t a, std::size_t b) const { return p_[a * cols_ + b]; }
    const std::vector<double>& probs() const { return p_; }

    ProbVector row_marginal() const {
        std::vector<double> m(rows_, 0.0);
        for (std::size_t a = 0; a < rows_; ++a)
            for (std::size_t b = 0; b < cols_; ++b) m[a] += (*this)(a, b);
        return ProbVector(std::move(m));
    }
    ProbVector col_marginal() const {
        std::vector<double> m(cols_, 0.0);
        for (std::size_t a = 0; a < rows_; ++a)
            for (std::size_t b = 0; b < cols_; ++b) m[b] += (*this)(a, b);
        return ProbVector(std::move(m));
    }

private:
    std::size_t rows_, cols_;
    std::vector<double> p_;
};

// (x, y, r) parameterization of a 2x2 joint table: marginals (1 +- x)/2 and
// (1 +- y)/2, correlation term r, with entries [(1+ax)(1+by)+abr]/4 for
// a, b in {+1, -1}. Physical iff |x+y| - 1 <= r + xy <= 1 - |x-y|.
struct BinaryParams {
    double x = 0.0;
    double y = 0.0;
    double r = 0.0;
};

inline bool is_physical(const BinaryParams& b, double tol = detail::kNegativeClip) {
    const double s = b.r + b.x * b.y;
    return std::abs(b.x + b.y) - 1.0 <= s + tol && s <= 1.0 - std::abs(b.x - b.y) + tol;
}

// Feasible r interval at fixed marginal parameters; never empty and always
// contains 0.
inline std::pair<double, double> binary_r_interval(double x, double y) {
    return {std::abs(x + y) - 1.0 - x * y, 1.0 - std::abs(x - y) - x * y};
}

inline double shannon_entropy(const ProbVector& p, Unit unit = Unit::bits) {
    return from_nats(detail::entropy_nats(p.weights().data(), p.size()), unit);
}

// sum_j p_j (ln p_j - ln q_j); +infinity when p_j > 0 with q_j = 0.
inline double relative_entropy(const ProbVector& p, const ProbVector& q,
                               Unit unit = Unit::bits) {
    if (p.size() != q.size())
        throw validation_error("relative_entropy: length mismatch");
    double d = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] <= 0.0) continue;
        if (q[j] <= 0.0) return std::numeric_limits<double>::infinity();
        d += p[j] * (std::log(p[j]) - std::log(q[j]));
    }
    return from_nats(d, unit);
}

inline double variational_distance(const ProbVector& p, const ProbVector& q) {
    if (p.size() != q.size())
        throw validation_error("variational_distance: length mismatch");
    double d = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) d += std::abs(p[j] - q[j]);
    return d;
}

// Mutual information of a joint table. Computed both as the relative
// entropy to the product of marginals and as H(A) + H(B) - H(AB); the two
// routes must agree within 1e-9 nats.
inline double mutual_information(const JointTable& t, Unit unit = Unit::bits) {
    const ProbVector pa = t.row_marginal();
    const ProbVector pb = t.col_marginal();
    double rel = 0.0;
    for (std::size_t a = 0; a < t.rows(); ++a) {
        for (std::size_t b = 0; b < t.cols(); ++b) {
            const double pab = t(a, b);
            if (pab <= 0.0) continue;
            rel += pab * (std::log(pab) - std::log(pa[a] * pb[b]));
        }
    }
    const double viaEntropies =
        detail::entropy_nats(pa.weights().data(), pa.size()) +
        detail::entropy_nats(pb.weights().data(), pb.size()) -
        detail::entropy_nats(t.probs().data(), t.probs().size());
    if (std::abs(rel - viaEntropies) > detail::kNormTol) {
        std::ostringstream os;
        os << "mutual_information: entropy route " << viaEntropies
           << " disagrees with relative-entropy route " << rel;
        throw consistency_error(os.str());
    }
    return from_nats(std::max(rel, 0.0), unit);
}

// L1 distance between the table and the product of its marginals.
inline double correlation_distance(const JointTable& t) {
    const ProbVector pa = t.row_marginal();
    const ProbVector pb = t.col_marginal();
    double d = 0.0;
    for (std::size_t a = 0; a < t.rows(); ++a)
        for (std::size_t b = 0; b < t.cols(); ++b)
            d += std::abs(t(a, b) - pa[a] * pb[b]);
    return d;
}

inline JointTable joint_from_binary(const BinaryParams& b) {
    const double s = b.r + b.x * b.y;
    if (std::abs(b.x + b.y) - 1.0 > s + detail::kNegativeClip) {
        std::ostringstream os;
        os << "binary params unphysical: r + x*y = " << s << " lies below |x+y| - 1 = "
           << std::abs(b.x + b.y) - 1.0;
        throw domain_error(os.str());
    }
    if (s > 1.0 - std::abs(b.x - b.y) + detail::kNegativeClip) {
        std::ostringstream os;
        os << "binary params unphysical: r + x*y = " << s << " exceeds 1 - |x-y| = "
           << 1.0 - std::abs(b.x - b.y);
        throw domain_error(os.str());
    }
    std::vector<double> p(4);
    // index 0 <-> outcome +1, index 1 <-> outcome -1
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double a = i == 0 ? 1.0 : -1.0;
            const double c = j == 0 ? 1.0 : -1.0;
            p[static_cast<std::size_t>(i * 2 + j)] =
                ((1.0 + a * b.x) * (1.0 + c * b.y) + a * c * b.r) / 4.0;
        }
    }
    return JointTable(2, 2, std::move(p));
}

// Inverse of joint_from_binary: r := 4 (P(+,+) - P_A(+) P_B(+)).
inline BinaryParams binary_from_joint(const JointTable& t) {
    if (t.rows() != 2 || t.cols() != 2)
        throw validation_error("binary_from_joint: table is not 2x2");
    const ProbVector pa = t.row_marginal();
    const ProbVector pb = t.col_marginal();
    BinaryParams b;
    b.x = 2.0 * pa[0] - 1.0;
    b.y = 2.0 * pb[0] - 1.0;
    b.r = 4.0 * (t(0, 0) - pa[0] * pb[0]);
    return b;
}

// Witness f(r) = I - ln 2 + H((1+r)/2, (1-r)/2); nonnegative for every
// physical (x, y, r) and zero at r = 0 or x = y = 0.
inline double witness_f(const BinaryParams& b, Unit unit = Unit::bits) {
    const double i = mutual_information(joint_from_binary(b), Unit::nats);
    const double hp[2] = {(1.0 + b.r) / 2.0, (1.0 - b.r) / 2.0};
    const double f = i - std::numbers::ln2 + detail::entropy_nats(hp, 2);
    return from_nats(f, unit);
}

// Closed form f''(0) = 1/((1-x^2)(1-y^2)) - 1, in nats.
inline double witness_second_derivative(double x, double y) {
    if (std::abs(x) >= 1.0 || std::abs(y) >= 1.0)
        throw domain_error("witness_second_derivative: needs |x|, |y| < 1");
    return 1.0 / ((1.0 - x * x) * (1.0 - y * y)) - 1.0;
}

} // namespace qcorr

#include "levyarea/types.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace levyarea {

std::string_view to_string(AlgorithmId alg) {
    switch (alg) {
        case AlgorithmId::Fourier: return "fourier";
        case AlgorithmId::Milstein: return "milstein";
        case AlgorithmId::Wiktorsson: return "wiktorsson";
        case AlgorithmId::MronRoe: return "mronroe";
    }
    return "unknown";
}

std::string_view to_string(ErrorNorm norm) {
    switch (norm) {
        case ErrorNorm::MaxL2: return "maxl2";
        case ErrorNorm::FrobeniusL2: return "frobeniusl2";
    }
    return "unknown";
}

namespace {
std::string lowered(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}
} // namespace

std::optional<AlgorithmId> parse_algorithm(std::string_view name) {
    const std::string s = lowered(name);
    if (s == "fourier") return AlgorithmId::Fourier;
    if (s == "milstein") return AlgorithmId::Milstein;
    if (s == "wiktorsson") return AlgorithmId::Wiktorsson;
    if (s == "mronroe" || s == "mrongowius-roessler") return AlgorithmId::MronRoe;
    return std::nullopt;
}

std::optional<ErrorNorm> parse_norm(std::string_view name) {
    const std::string s = lowered(name);
    if (s == "maxl2") return ErrorNorm::MaxL2;
    if (s == "frobeniusl2" || s == "frobl2") return ErrorNorm::FrobeniusL2;
    return std::nullopt;
}

double norm_factor(int m, ErrorNorm from, ErrorNorm to) {
    if (m < 1) {
        throw std::invalid_argument("norm_factor: m must be >= 1");
    }
    if (from == to) {
        return 1.0;
    }
    const double f = std::sqrt(static_cast<double>(m) * m - m);
    if (from == ErrorNorm::MaxL2) {
        return f;
    }
    if (m == 1) {
        throw std::domain_error("norm_factor: degenerate dimension (m=1 has no off-diagonal entries)");
    }
    return 1.0 / f;
}

WienerIncrement::WienerIncrement(Vector values, double step)
    : values_(std::move(values)), step_(step) {
    if (values_.size() < 1) {
        throw std::invalid_argument("WienerIncrement: dimension must be >= 1");
    }
    if (!(step_ > 0.0) || !std::isfinite(step_)) {
        throw std::invalid_argument("WienerIncrement: step must be positive and finite");
    }
    if (!values_.allFinite()) {
        throw std::invalid_argument("WienerIncrement: entries must be finite");
    }
}

StandardizedIncrement WienerIncrement::standardized() const {
    return StandardizedIncrement(*this);
}

StandardizedIncrement::StandardizedIncrement(const WienerIncrement& w)
    : values_(w.values() / std::sqrt(w.step())) {}

LevyArea::LevyArea(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("LevyArea: matrix must be square");
    }
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
        if (entries_(j, j) != 0.0) {
            throw std::invalid_argument("LevyArea: diagonal must be exactly zero");
        }
        for (Eigen::Index i = j + 1; i < entries_.rows(); ++i) {
            if (entries_(i, j) != -entries_(j, i)) {
                throw std::invalid_argument("LevyArea: matrix must be exactly skew-symmetric");
            }
        }
    }
}

LevyArea LevyArea::from_series(const Matrix& series) {
    const double inv_two_pi = 1.0 / (2.0 * std::numbers::pi);
    const Eigen::Index m = series.rows();
    Matrix a = Matrix::Zero(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index i = j + 1; i < m; ++i) {
            const double v = (series(i, j) - series(j, i)) * inv_two_pi;
            a(i, j) = v;
            a(j, i) = -v;
        }
    }
    return LevyArea(std::move(a), Unchecked{});
}

} // namespace levyarea

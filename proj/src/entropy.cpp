#include "fchain/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fchain {

namespace {

constexpr double kSlack = 1e-10;

double clip01(double p, const char* what) {
    if (p < -kSlack || p > 1.0 + kSlack) {
        std::ostringstream os;
        os << what << ": value " << p << " outside [0, 1] beyond tolerance";
        throw std::runtime_error(os.str());
    }
    return std::min(1.0, std::max(0.0, p));
}

}  // namespace

double binary_entropy(double p) {
    if (p < -kSlack || p > 1.0 + kSlack)
        throw std::invalid_argument("binary_entropy: argument outside [0, 1]");
    p = std::min(1.0, std::max(0.0, p));
    double h = 0.0;
    if (p > 0.0) h -= p * std::log(p);
    if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
    return h;
}

EntropyResult subsystem_entropy(const CorrelationData& corr) {
    EntropyResult result;
    result.sites = corr.sites;
    if (!corr.F) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(corr.C,
                                                               Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("subsystem_entropy: eigensolver failed on C");
        detail::CompensatedSum s;
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
            double p = clip01(solver.eigenvalues()(i), "subsystem_entropy: occupation");
            result.spectrum.push_back(p);
            s.add(binary_entropy(p));
        }
        result.entropy = s.value();
        return result;
    }
    Eigen::MatrixXcd m = majorana_matrix(corr);
    // M - 1 = i Gamma is Hermitian with spectrum symmetric about zero; the
    // +/- nu pairs carry the mode occupations (1 +/- nu)/2.
    Eigen::MatrixXcd a = m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("subsystem_entropy: eigensolver failed on the Majorana matrix");
    std::vector<double> lam(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(lam.begin(), lam.end(),
              [](double x, double y) { return std::abs(x) < std::abs(y); });
    double scale = lam.empty() ? 1.0 : std::max(1.0, std::abs(lam.back()));
    detail::CompensatedSum s;
    for (size_t i = 0; i + 1 < lam.size(); i += 2) {
        if (std::abs(std::abs(lam[i]) - std::abs(lam[i + 1])) > 1e-8 * scale)
            throw std::runtime_error(
                "subsystem_entropy: Majorana spectrum does not pair into +/- doublets");
        double nu = 0.5 * (std::abs(lam[i]) + std::abs(lam[i + 1]));
        result.spectrum.push_back(nu);
        s.add(binary_entropy(clip01(0.5 * (1.0 + nu), "subsystem_entropy: occupation")));
    }
    std::sort(result.spectrum.begin(), result.spectrum.end());
    result.entropy = s.value();
    return result;
}

EntropyResult subsystem_entropy(const GroundStateData& state, const std::vector<int>& sites) {
    return subsystem_entropy(correlation_matrix(state, sites));
}

}  // namespace fchain

#include "tomo/expm.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace tomo {

namespace {

using Mat = Eigen::MatrixXcd;

// Pade order-13 coefficients (Higham 2005).
constexpr double b13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

Mat pade13(const Mat& a) {
    const int n = static_cast<int>(a.rows());
    const Mat I = Mat::Identity(n, n);
    const Mat a2 = a * a;
    const Mat a4 = a2 * a2;
    const Mat a6 = a4 * a2;
    Mat u = a * (a6 * (b13[13] * a6 + b13[11] * a4 + b13[9] * a2) +
                 b13[7] * a6 + b13[5] * a4 + b13[3] * a2 + b13[1] * I);
    Mat v = a6 * (b13[12] * a6 + b13[10] * a4 + b13[8] * a2) +
            b13[6] * a6 + b13[4] * a4 + b13[2] * a2 + b13[0] * I;
    return (v - u).partialPivLu().solve(v + u);
}

} // namespace

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
    const double theta13 = 5.371920351148152;
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff(); // 1-norm
    int squarings = 0;
    Mat scaled = a;
    if (norm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
        scaled /= std::pow(2.0, squarings);
    }
    Mat e = pade13(scaled);
    for (int i = 0; i < squarings; ++i) e = e * e;
    return e;
}

Eigen::MatrixXcd expm_hermitian_phase(const Eigen::MatrixXcd& h, double scale) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    const auto& lam = es.eigenvalues();
    const Mat& v = es.eigenvectors();
    Eigen::VectorXcd phases(lam.size());
    for (int i = 0; i < lam.size(); ++i)
        phases(i) = std::polar(1.0, scale * lam(i));
    return v * phases.asDiagonal() * v.adjoint();
}

} // namespace tomo

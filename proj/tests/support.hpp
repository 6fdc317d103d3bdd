#pragma once

#include <Eigen/Dense>
#include <Eigen/QR>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace testsupport {

inline std::mt19937_64 make_rng(unsigned long long seed) { return std::mt19937_64(seed); }

inline Eigen::MatrixXd random_gaussian(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = g(rng);
    return m;
}

inline Eigen::VectorXd random_vector(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = g(rng);
    return v;
}

inline Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
    const Eigen::MatrixXd g = random_gaussian(n, n, rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    // Fix the sign convention so Q is uniquely defined by the input.
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i)
        if (r(i, i) < 0) q.col(i) = -q.col(i);
    return q;
}

/// Symmetric matrix with a prescribed spectrum, via orthogonal similarity.
inline Eigen::MatrixXd matrix_with_spectrum(const Eigen::VectorXd& eigenvalues,
                                            std::mt19937_64& rng) {
    const int n = static_cast<int>(eigenvalues.size());
    const Eigen::MatrixXd q = random_orthogonal(n, rng);
    return q * eigenvalues.asDiagonal() * q.transpose();
}

/// SPD matrix with eigenvalues in [lo, hi].
inline Eigen::MatrixXd random_spd(int n, double lo, double hi, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(lo, hi);
    Eigen::VectorXd ev(n);
    for (int i = 0; i < n; ++i) ev(i) = u(rng);
    ev(0) = lo;
    ev(n - 1) = hi;
    return matrix_with_spectrum(ev, rng);
}

/// Complex symmetric (not Hermitian) matrix, the EFIE impedance shape.
inline Eigen::MatrixXcd random_complex_symmetric(int n, std::mt19937_64& rng) {
    const Eigen::MatrixXd a = random_gaussian(n, n, rng);
    const Eigen::MatrixXd b = random_gaussian(n, n, rng);
    Eigen::MatrixXcd z = a.cast<std::complex<double>>() +
                         std::complex<double>(0, 1) * b.cast<std::complex<double>>();
    return (z + z.transpose()) / 2.0;
}

/// Unique scratch directory under the build tree; removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("efh_test_" + tag + "_" + std::to_string(counter.fetch_add(1)) + "_" +
                 std::to_string(::getpid()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

} // namespace testsupport

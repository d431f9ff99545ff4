#include "heightlab/fourier.hpp"

#include <cmath>
#include <sstream>

#include "heightlab/error.hpp"

namespace heightlab {

FourierFunction FourierFunction::parse(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidInput, "bad Fourier coefficient '" + item + "'");
    }
  }
  if (values.empty()) throw Error(ErrorKind::InvalidInput, "empty Fourier coefficient list");
  FourierFunction f;
  f.a0 = values[0];
  for (std::size_t i = 1; i < values.size(); i += 2) {
    f.a.push_back(values[i]);
    f.b.push_back(i + 1 < values.size() ? values[i + 1] : 0.0);
  }
  return f;
}

int FourierFunction::order() const {
  return static_cast<int>(std::max(a.size(), b.size()));
}

double FourierFunction::extension(double r, double theta) const {
  double sum = a0;
  double rk = 1.0;
  const int K = order();
  for (int k = 1; k <= K; ++k) {
    rk *= r;
    const double ak = k <= static_cast<int>(a.size()) ? a[k - 1] : 0.0;
    const double bk = k <= static_cast<int>(b.size()) ? b[k - 1] : 0.0;
    sum += rk * (ak * std::cos(k * theta) + bk * std::sin(k * theta));
  }
  return sum;
}

void FourierFunction::extension_gradient(double r, double theta, double& d_r,
                                         double& d_theta_over_r) const {
  d_r = 0.0;
  d_theta_over_r = 0.0;
  double rk1 = 1.0;  // r^{k-1}
  const int K = order();
  for (int k = 1; k <= K; ++k) {
    const double ak = k <= static_cast<int>(a.size()) ? a[k - 1] : 0.0;
    const double bk = k <= static_cast<int>(b.size()) ? b[k - 1] : 0.0;
    const double c = std::cos(k * theta);
    const double s = std::sin(k * theta);
    d_r += k * rk1 * (ak * c + bk * s);
    d_theta_over_r += k * rk1 * (-ak * s + bk * c);
    rk1 *= r;
  }
}

bool FourierFunction::conjugation_invariant() const {
  for (double v : b)
    if (v != 0.0) return false;
  return true;
}

}  // namespace heightlab

#pragma once

#include <span>
#include <vector>

#include "talbot/gratings.hpp"

namespace talbot {

/// Near-field density pattern behind a single grating under plane-wave
/// illumination: density(t, x) over one grating period.
struct CarpetGrid {
  std::vector<double> times;      ///< t / T_T
  std::vector<double> positions;  ///< x / d in [0, 1)
  std::vector<std::vector<double>> density;  ///< row per time
  double max_tail_coeff = 0.0;    ///< largest |B_N| encountered at the truncation edge
  bool truncation_warning = false;
};

/// Uniform position grid over one period, x/d = k/n for k = 0..n-1.
std::vector<double> uniform_positions(int n);

/// w_t(x) = sum_n B_n(n t / T_T) exp(2 pi i n x / d), real part after
/// hermitian symmetrization. order_max <= 0 selects the grating default.
CarpetGrid carpet(const TalbotCoeffFn& coeff_fn, std::span<const double> times,
                  std::span<const double> positions, int order_max = 0);

/// Same pattern with the classical coefficients C_n.
CarpetGrid classical_carpet(const GratingSpec& spec, std::span<const double> times,
                            std::span<const double> positions, int order_max = 0,
                            int quadrature_points = 512);

}  // namespace talbot

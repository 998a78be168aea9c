#pragma once

#include <complex>
#include <vector>

#include "attobeat/essential_states.hpp"

namespace attobeat::analysis {

// Linear least squares for the window overlaps of the essential-states model
// given resonance energies: y(tau) ~ B + sum_m 2 Re(g_m e^{-i dE_m tau}).
// The pump-probe term is second order and left out of the fit; G is filled
// with the rank-one estimate conj(g_m) g_n / (B/2).
WindowOverlaps fit_window_couplings(const std::vector<double>& tau, const std::vector<double>& yield,
                                    const std::vector<std::complex<double>>& excitation);

}  // namespace attobeat::analysis

#pragma once

#include <complex>
#include <string>
#include <vector>

namespace mrcs {

enum class DesignMethod { Equiripple, KaiserWindow };

// Lowpass prototype specification. Frequencies are normalized to the
// sample rate (cycles/sample), so the usable range is (0, 0.5).
struct FilterSpec {
    int num_channels = 8;
    int num_taps = 192;  // must be a multiple of num_channels
    double passband_edge = 1.0 / 16.0 - 0.01;
    double stopband_edge = 1.0 / 16.0 + 0.01;
    double stopband_atten_db = 60.0;
    DesignMethod method = DesignMethod::Equiripple;

    void validate() const;  // throws ConfigError / InfeasibleSpecError
};

struct FirFilter {
    std::vector<double> taps;
    FilterSpec spec;
};

struct FrequencyResponse {
    std::vector<double> grid;  // strictly increasing, within [0, 0.5]
    std::vector<std::complex<double>> values;
};

// Designs the prototype per spec.method. Equiripple uses a Remez exchange
// with a Chebyshev-node initial extremal set and a 20-iteration cap;
// Kaiser is the fallback when Remez fails to converge. The returned filter
// is verified against the spec on a 4096-point grid (stopband attenuation
// within 1 dB of the request, passband ripple <= 1 dB).
FirFilter design_prototype(const FilterSpec& spec);

// Branch m holds taps[m], taps[m+M], taps[m+2M], ...
std::vector<std::vector<double>> polyphase_decompose(const FirFilter& h, int M);

// values[k] = sum_n taps[n] * exp(-i 2 pi grid[k] n), grid uniform on [0, 0.5].
FrequencyResponse frequency_response(const FirFilter& h, int num_points);
FrequencyResponse frequency_response(const std::vector<double>& taps, int num_points);

// Measured as max |H(f)| over [stopband_edge, 0.5], in (positive) dB.
double measured_stopband_atten_db(const FirFilter& h, int num_points = 4096);
double measured_passband_ripple_db(const FirFilter& h, int num_points = 4096);

// Plaintext coefficient files: one decimal or scientific value per line,
// '#' starts a comment line.
std::vector<double> load_coefficients(const std::string& path);
void save_coefficients(const std::vector<double>& taps, const std::string& path);

namespace detail {
// Exposed for tests: raw design routines without the spec verification pass.
std::vector<double> remez_lowpass(int num_taps, double pass_edge, double stop_edge,
                                  double weight_pass, double weight_stop,
                                  int max_iterations = 20);
std::vector<double> kaiser_lowpass(int num_taps, double pass_edge, double stop_edge,
                                   double atten_db);
}  // namespace detail

}  // namespace mrcs

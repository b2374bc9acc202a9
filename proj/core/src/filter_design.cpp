#include "mrcs/filter_design.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "mrcs/errors.hpp"

namespace mrcs {

namespace {

constexpr double kPi = std::numbers::pi;

// Kaiser/Bellanger length estimate for a lowpass with the given transition
// width; used only as a feasibility screen before running a design.
double estimated_taps(double atten_db, double transition_width) {
    return (atten_db - 7.95) / (14.36 * transition_width);
}

double i0(double x) {
    // Series expansion of the zeroth-order modified Bessel function.
    double sum = 1.0, term = 1.0;
    for (int k = 1; k < 64; ++k) {
        term *= (x / (2.0 * k)) * (x / (2.0 * k));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

double kaiser_beta(double atten_db) {
    if (atten_db > 50.0) return 0.1102 * (atten_db - 8.7);
    if (atten_db >= 21.0)
        return 0.5842 * std::pow(atten_db - 21.0, 0.4) + 0.07886 * (atten_db - 21.0);
    return 0.0;
}

struct RemezGrid {
    std::vector<double> freq;     // cycles/sample
    std::vector<double> desired;  // after the type-II cos(pi f) adjustment
    std::vector<double> weight;
};

}  // namespace

void FilterSpec::validate() const {
    if (num_channels < 1) throw ConfigError("num_channels must be positive");
    if (num_taps < 1) throw ConfigError("num_taps must be positive");
    if (num_taps % num_channels != 0)
        throw ConfigError("num_taps must be a multiple of num_channels");
    if (!(passband_edge > 0.0 && passband_edge < 0.5))
        throw ConfigError("passband_edge must lie in (0, 0.5)");
    if (!(stopband_edge > passband_edge && stopband_edge < 0.5))
        throw ConfigError("stopband_edge must lie in (passband_edge, 0.5)");
    if (!(stopband_atten_db > 0.0))
        throw ConfigError("stopband_atten_db must be positive");
}

namespace detail {

std::vector<double> kaiser_lowpass(int num_taps, double pass_edge, double stop_edge,
                                   double atten_db) {
    const double fc = 0.5 * (pass_edge + stop_edge);
    const double beta = kaiser_beta(atten_db);
    const double tau = 0.5 * (num_taps - 1);
    const double denom = i0(beta);
    std::vector<double> h(num_taps);
    for (int n = 0; n < num_taps; ++n) {
        const double t = n - tau;
        const double sinc = (t == 0.0) ? 1.0 : std::sin(2.0 * kPi * fc * t) / (kPi * t * 2.0 * fc);
        double frac = (num_taps > 1) ? 2.0 * t / (num_taps - 1) : 0.0;
        const double w = i0(beta * std::sqrt(std::max(0.0, 1.0 - frac * frac))) / denom;
        h[n] = 2.0 * fc * sinc * w;
    }
    // Unity DC gain.
    double sum = 0.0;
    for (double v : h) sum += v;
    if (sum != 0.0)
        for (double& v : h) v /= sum;
    return h;
}

std::vector<double> remez_lowpass(int num_taps, double pass_edge, double stop_edge,
                                  double weight_pass, double weight_stop,
                                  int max_iterations) {
    if (num_taps < 3) throw InfeasibleSpecError("remez: too few taps");
    const bool even = (num_taps % 2) == 0;
    // r = number of cosine basis functions of P(f); type II carries an
    // extra cos(pi f) factor and one fewer basis function.
    const int r = even ? num_taps / 2 : (num_taps + 1) / 2;
    const int ne = r + 1;  // extremal count

    // Dense grid over both bands, density ~16 points per basis function,
    // split proportionally to band width.
    const double bw_pass = pass_edge;
    const double bw_stop = 0.5 - stop_edge;
    const int total = std::max(ne * 32, 1024);
    int n_pass = std::max(8, static_cast<int>(total * bw_pass / (bw_pass + bw_stop)));
    int n_stop = std::max(8, total - n_pass);

    RemezGrid g;
    const double f_hi = even ? 0.5 - 0.25 / n_stop : 0.5;
    // Band membership is assigned while building the grid; deriving it from
    // the frequency afterwards can misclassify the band-edge points when the
    // division rounds past the edge.
    auto push_band = [&](double f, bool in_pass) {
        double d = in_pass ? 1.0 : 0.0;
        double w = in_pass ? weight_pass : weight_stop;
        if (even) {
            const double c = std::cos(kPi * f);
            d /= c;
            w *= c;
        }
        g.freq.push_back(f);
        g.desired.push_back(d);
        g.weight.push_back(w);
    };
    for (int i = 0; i < n_pass; ++i) {
        const double f = (i == n_pass - 1) ? pass_edge : bw_pass * i / (n_pass - 1);
        push_band(f, true);
    }
    for (int i = 0; i < n_stop; ++i)
        push_band(stop_edge + (f_hi - stop_edge) * i / (n_stop - 1), false);
    const int G = static_cast<int>(g.freq.size());

    // Chebyshev-node initial extremal set: uniform in f is Chebyshev in the
    // interpolation variable x = cos(2 pi f).
    std::vector<int> ext(ne);
    for (int k = 0; k < ne; ++k)
        ext[k] = static_cast<int>(std::lround(static_cast<double>(k) * (G - 1) / (ne - 1)));
    for (int k = 1; k < ne; ++k)
        if (ext[k] <= ext[k - 1]) ext[k] = ext[k - 1] + 1;

    std::vector<long double> fext(ne), bary(ne), cval(ne);
    double delta = 0.0;

    // cos(2 pi fa) - cos(2 pi fb), computed in product form so that nearby
    // frequencies keep full relative precision.
    auto xdiff = [](long double fa, long double fb) -> long double {
        return 2.0L * std::sin(kPi * (fa + fb)) * std::sin(kPi * (fb - fa));
    };

    auto eval = [&](long double f) -> double {
        long double num = 0.0, den = 0.0;
        for (int k = 0; k < ne; ++k) {
            long double dx = xdiff(f, fext[k]);
            if (std::abs(static_cast<double>(dx)) < 1e-18) return static_cast<double>(cval[k]);
            long double t = bary[k] / dx;
            num += t * cval[k];
            den += t;
        }
        return static_cast<double>(num / den);
    };

    bool converged = false;
    std::vector<double> err(G);
    for (int iter = 0; iter < max_iterations && !converged; ++iter) {
        for (int k = 0; k < ne; ++k) fext[k] = static_cast<long double>(g.freq[ext[k]]);
        for (int k = 0; k < ne; ++k) {
            long double prod = 1.0;
            for (int j = 0; j < ne; ++j)
                if (j != k) prod *= xdiff(fext[k], fext[j]);
            bary[k] = 1.0L / prod;
        }
        long double num = 0.0, den = 0.0;
        for (int k = 0; k < ne; ++k) {
            num += bary[k] * g.desired[ext[k]];
            den += (k % 2 == 0 ? 1.0L : -1.0L) * bary[k] / g.weight[ext[k]];
        }
        delta = static_cast<double>(num / den);
        for (int k = 0; k < ne; ++k)
            cval[k] = g.desired[ext[k]] - (k % 2 == 0 ? 1.0 : -1.0) * delta / g.weight[ext[k]];

        for (int i = 0; i < G; ++i) {
            err[i] = g.weight[i] * (eval(static_cast<long double>(g.freq[i])) - g.desired[i]);
        }

        // Multiple exchange: collect every signed local extremum of the
        // error, then thin the list back to ne nodes. Thinning removes the
        // weaker member of any same-sign adjacent pair first (restoring
        // alternation), then weakest nodes, and finally the weaker endpoint
        // when exactly one alternating extra remains.
        std::vector<int> cand;
        for (int i = 0; i < G; ++i) {
            bool take;
            if (i == 0)
                take = (err[0] > 0.0 && err[0] > err[1]) || (err[0] < 0.0 && err[0] < err[1]);
            else if (i == G - 1)
                take = (err[i] > 0.0 && err[i] > err[i - 1]) ||
                       (err[i] < 0.0 && err[i] < err[i - 1]);
            else
                take = (err[i] >= err[i - 1] && err[i] > err[i + 1] && err[i] > 0.0) ||
                       (err[i] <= err[i - 1] && err[i] < err[i + 1] && err[i] < 0.0);
            if (take) cand.push_back(i);
        }
        if (static_cast<int>(cand.size()) < ne)
            throw DesignFailureError("remez: lost alternation during exchange");

        while (static_cast<int>(cand.size()) > ne) {
            const int k = static_cast<int>(cand.size());
            int drop = -1;
            for (int j = 1; j < k; ++j) {
                if ((err[cand[j]] > 0.0) == (err[cand[j - 1]] > 0.0)) {
                    drop = (std::abs(err[cand[j]]) < std::abs(err[cand[j - 1]])) ? j : j - 1;
                    break;
                }
            }
            if (drop < 0) {
                if (k - ne == 1) {
                    drop = (std::abs(err[cand[0]]) <= std::abs(err[cand[k - 1]])) ? 0 : k - 1;
                } else {
                    drop = 0;
                    for (int j = 1; j < k; ++j)
                        if (std::abs(err[cand[j]]) < std::abs(err[cand[drop]])) drop = j;
                }
            }
            cand.erase(cand.begin() + drop);
        }

        double emax = 0.0;
        for (int i = 0; i < G; ++i) emax = std::max(emax, std::abs(err[i]));
        converged = (emax - std::abs(delta)) <= 1e-6 * emax;
        ext = std::move(cand);
    }
    if (!converged)
        throw DesignFailureError("remez: no convergence within iteration cap");

    // Final interpolant coefficients at the converged extremal set.
    for (int k = 0; k < ne; ++k)
        fext[k] = static_cast<long double>(g.freq[ext[k]]);
    for (int k = 0; k < ne; ++k) {
        long double prod = 1.0;
        for (int j = 0; j < ne; ++j)
            if (j != k) prod *= xdiff(fext[k], fext[j]);
        bary[k] = 1.0L / prod;
    }
    {
        long double num = 0.0, den = 0.0;
        for (int k = 0; k < ne; ++k) {
            num += bary[k] * g.desired[ext[k]];
            den += (k % 2 == 0 ? 1.0L : -1.0L) * bary[k] / g.weight[ext[k]];
        }
        delta = static_cast<double>(num / den);
        for (int k = 0; k < ne; ++k)
            cval[k] = g.desired[ext[k]] - (k % 2 == 0 ? 1.0 : -1.0) * delta / g.weight[ext[k]];
    }

    // Zero-phase amplitude sampled at j/N, then an exact inverse DFT.
    const int N = num_taps;
    const double tau = 0.5 * (N - 1);
    std::vector<double> amp(N);
    for (int j = 0; j < N; ++j) {
        double f = static_cast<double>(j) / N;
        double fr = (f <= 0.5) ? f : 1.0 - f;
        double p = eval(static_cast<long double>(fr));
        double a = even ? std::cos(kPi * fr) * p : p;
        if (f > 0.5 && even) a = -a;  // type II amplitude is odd about f = 1/2
        amp[j] = a;
    }
    std::vector<double> h(N);
    for (int n = 0; n < N; ++n) {
        double acc = 0.0;
        for (int j = 0; j < N; ++j)
            acc += amp[j] * std::cos(2.0 * kPi * j * (n - tau) / N);
        h[n] = acc / N;
    }
    // Snap to exact linear-phase symmetry.
    for (int n = 0; n < N / 2; ++n) {
        double v = 0.5 * (h[n] + h[N - 1 - n]);
        h[n] = h[N - 1 - n] = v;
    }
    return h;
}

}  // namespace detail

FirFilter design_prototype(const FilterSpec& spec) {
    spec.validate();
    const double tw = spec.stopband_edge - spec.passband_edge;
    if (spec.num_taps < 0.6 * estimated_taps(spec.stopband_atten_db, tw))
        throw InfeasibleSpecError(
            "transition band too narrow for num_taps at the requested attenuation");

    // Passband ripple budget of 1 dB sets the band weighting.
    const double delta_p = (std::pow(10.0, 0.05) - 1.0) / (std::pow(10.0, 0.05) + 1.0);
    const double delta_s = std::pow(10.0, -spec.stopband_atten_db / 20.0);

    FirFilter h;
    h.spec = spec;
    if (spec.method == DesignMethod::Equiripple) {
        h.taps = detail::remez_lowpass(spec.num_taps, spec.passband_edge,
                                       spec.stopband_edge, 1.0, delta_p / delta_s);
    } else {
        h.taps = detail::kaiser_lowpass(spec.num_taps, spec.passband_edge,
                                        spec.stopband_edge, spec.stopband_atten_db);
    }

    const double atten = measured_stopband_atten_db(h);
    const double ripple = measured_passband_ripple_db(h);
    if (atten < spec.stopband_atten_db - 1.0)
        throw DesignFailureError("designed filter misses the stopband spec: " +
                                 std::to_string(atten) + " dB");
    if (ripple > 1.0)
        throw DesignFailureError("designed filter exceeds 1 dB passband ripple: " +
                                 std::to_string(ripple) + " dB");
    return h;
}

std::vector<std::vector<double>> polyphase_decompose(const FirFilter& h, int M) {
    if (M < 1) throw ConfigError("polyphase_decompose: M must be positive");
    if (h.taps.size() % static_cast<size_t>(M) != 0)
        throw ShapeError("polyphase_decompose: tap count not divisible by M");
    const size_t L = h.taps.size() / M;
    std::vector<std::vector<double>> branches(M, std::vector<double>(L));
    for (int m = 0; m < M; ++m)
        for (size_t q = 0; q < L; ++q)
            branches[m][q] = h.taps[q * M + m];
    return branches;
}

FrequencyResponse frequency_response(const std::vector<double>& taps, int num_points) {
    if (num_points < 2) throw ConfigError("frequency_response: num_points must be >= 2");
    FrequencyResponse r;
    r.grid.resize(num_points);
    r.values.resize(num_points);
    for (int k = 0; k < num_points; ++k) {
        const double f = 0.5 * k / (num_points - 1);
        r.grid[k] = f;
        std::complex<double> acc = 0.0;
        for (size_t n = 0; n < taps.size(); ++n)
            acc += taps[n] * std::exp(std::complex<double>(0.0, -2.0 * kPi * f * n));
        r.values[k] = acc;
    }
    return r;
}

FrequencyResponse frequency_response(const FirFilter& h, int num_points) {
    return frequency_response(h.taps, num_points);
}

double measured_stopband_atten_db(const FirFilter& h, int num_points) {
    const auto r = frequency_response(h, num_points);
    double peak = 0.0;
    for (size_t k = 0; k < r.grid.size(); ++k)
        if (r.grid[k] >= h.spec.stopband_edge)
            peak = std::max(peak, std::abs(r.values[k]));
    return -20.0 * std::log10(std::max(peak, 1e-300));
}

double measured_passband_ripple_db(const FirFilter& h, int num_points) {
    const auto r = frequency_response(h, num_points);
    double lo = std::numeric_limits<double>::max(), hi = 0.0;
    for (size_t k = 0; k < r.grid.size(); ++k) {
        if (r.grid[k] <= h.spec.passband_edge) {
            double m = std::abs(r.values[k]);
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
    }
    return 20.0 * std::log10(hi / lo);
}

std::vector<double> load_coefficients(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open coefficient file: " + path);
    std::vector<double> taps;
    std::string line;
    while (std::getline(in, line)) {
        auto pos = line.find('#');
        if (pos != std::string::npos) line.erase(pos);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ss(line);
        double v;
        std::string rest;
        if (!(ss >> v) || (ss >> rest))
            throw IoError("bad coefficient line in " + path + ": " + line);
        taps.push_back(v);
    }
    return taps;
}

void save_coefficients(const std::vector<double>& taps, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write coefficient file: " + path);
    out.precision(17);
    for (double v : taps) out << v << "\n";
}

}  // namespace mrcs

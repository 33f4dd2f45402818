// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "internal.hpp"
#include "texbench/error.hpp"

namespace texbench::desc {

// Full nx x ny spectrum of a real plane, computed in double and stored in
// single precision for the per-filter inverse transforms.
struct Spectrum {
    int nx = 0;
    int ny = 0;
    std::vector<std::complex<float>> data;
};

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Relative lobe level below which a filter's spectrum is dropped.
constexpr double kLobeCut = 1e-5;

int wrap(int k, int n) {
    k %= n;
    return k < 0 ? k + n : k;
}

int offset_of(int b, int m) {
    return b < (m + 1) / 2 ? b : b - m;
}

int ceil_div(int a, int b) {
    return (a + b - 1) / b;
}

} // namespace

bool operator==(const GaborBankConfig& a, const GaborBankConfig& b) {
    return a.orientations == b.orientations && a.scales == b.scales && a.top_frequency == b.top_frequency &&
           a.bandwidth_octaves == b.bandwidth_octaves && a.pad == b.pad && a.pad_mode == b.pad_mode &&
           a.max_decimation == b.max_decimation;
}

struct GaborBank::Plans {
    fftw_plan forward = nullptr;
    std::map<std::pair<int, int>, fftwf_plan> inverse;

    ~Plans() {
        std::lock_guard lock(planner_mutex());
        if (forward) {
            fftw_destroy_plan(forward);
        }
        for (auto& [size, plan] : inverse) {
            fftwf_destroy_plan(plan);
        }
    }
};

GaborBank::GaborBank(const GaborBankConfig& config, int width, int height)
    : config_(config), width_(width), height_(height), plans_(std::make_unique<Plans>()) {
    if (config.orientations < 1 || config.scales < 1 || !(config.top_frequency > 0.0) ||
        config.top_frequency > 0.5 || !(config.bandwidth_octaves > 0.0) || config.pad < 0 ||
        config.max_decimation < 1 || width < 1 || height < 1) {
        throw InvalidInput("gabor bank: invalid configuration");
    }
    pad_ = config.pad_mode == PadMode::Circular ? 0 : config.pad;
    nx_ = width + 2 * pad_;
    ny_ = height + 2 * pad_;

    const double half_power = std::sqrt(2.0 * std::log(2.0));
    const double b = std::pow(2.0, config.bandwidth_octaves);
    const double cut = std::sqrt(2.0 * std::log(1.0 / kLobeCut));
    for (int s = 0; s < config.scales; ++s) {
        const double f = config.top_frequency / std::pow(2.0, s);
        const double sigma_r = f * (b - 1.0) / ((b + 1.0) * half_power);
        const double sigma_t = f * std::tan(std::numbers::pi / (2.0 * config.orientations)) / half_power;
        const double reach = cut * std::max(sigma_r, sigma_t);
        for (int o = 0; o < config.orientations; ++o) {
            GaborFilter g;
            g.frequency = f;
            g.theta = o * std::numbers::pi / config.orientations;
            const double c = std::cos(g.theta);
            const double sn = std::sin(g.theta);
            const double k0x = f * c;
            const double k0y = f * sn;

            g.stride = 1;
            g.mx = nx_;
            g.my = ny_;
            int d = 1;
            while (d * 2 <= config.max_decimation) {
                d *= 2;
            }
            for (; d >= 2; d /= 2) {
                if (nx_ % d != 0 || ny_ % d != 0 || (nx_ / d) % 2 != 0 || (ny_ / d) % 2 != 0) {
                    continue;
                }
                const int mx = nx_ / d;
                const int my = ny_ / d;
                const int cx = static_cast<int>(std::lround(k0x * nx_));
                const int cy = static_cast<int>(std::lround(k0y * ny_));
                const bool fits_x = k0x - reach >= double(cx - mx / 2) / nx_ && k0x + reach <= double(cx + mx / 2 - 1) / nx_;
                const bool fits_y = k0y - reach >= double(cy - my / 2) / ny_ && k0y + reach <= double(cy + my / 2 - 1) / ny_;
                if (fits_x && fits_y) {
                    g.stride = d;
                    g.mx = mx;
                    g.my = my;
                    g.cx = cx;
                    g.cy = cy;
                    break;
                }
            }

            g.window.assign(static_cast<std::size_t>(g.mx) * g.my, 0.0);
            for (int by = 0; by < g.my; ++by) {
                const int ky_bin = g.cy + offset_of(by, g.my);
                for (int bx = 0; bx < g.mx; ++bx) {
                    const int kx_bin = g.cx + offset_of(bx, g.mx);
                    if (wrap(kx_bin, nx_) == 0 && wrap(ky_bin, ny_) == 0) {
                        continue;
                    }
                    const double kx = double(kx_bin) / nx_;
                    const double ky = double(ky_bin) / ny_;
                    const double kr = kx * c + ky * sn - f;
                    const double kt = -kx * sn + ky * c;
                    const double v = std::exp(-0.5 * (kr * kr / (sigma_r * sigma_r) + kt * kt / (sigma_t * sigma_t)));
                    g.window[static_cast<std::size_t>(by) * g.mx + bx] = v >= kLobeCut ? v : 0.0;
                }
            }
            for (int by = 0; by < g.my; ++by) {
                g.rows.push_back(wrap(g.cy + offset_of(by, g.my), ny_));
            }
            for (int bx = 0; bx < g.mx; ++bx) {
                g.cols.push_back(wrap(g.cx + offset_of(bx, g.mx), nx_));
            }
            for (int by = 0; by < g.my; ++by) {
                const double* w = &g.window[static_cast<std::size_t>(by) * g.mx];
                for (int bx = 0; bx < g.mx; ++bx) {
                    if (w[bx] == 0.0) {
                        continue;
                    }
                    auto& spans = g.spans;
                    if (spans.empty() || spans.back().row != by || spans.back().dst + spans.back().len != bx ||
                        spans.back().src + spans.back().len != g.cols[bx]) {
                        spans.push_back({by, bx, g.cols[bx], 0});
                    }
                    ++spans.back().len;
                    g.weights.push_back(static_cast<float>(w[bx]));
                }
            }
            filters_.push_back(std::move(g));
        }
    }

    std::lock_guard lock(planner_mutex());
    {
        double* in = fftw_alloc_real(static_cast<std::size_t>(nx_) * ny_);
        fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(ny_) * (nx_ / 2 + 1));
        plans_->forward = fftw_plan_dft_r2c_2d(ny_, nx_, in, out, FFTW_ESTIMATE);
        fftw_free(in);
        fftw_free(out);
    }
    for (const auto& g : filters_) {
        const auto key = std::make_pair(g.my, g.mx);
        if (plans_->inverse.count(key) == 0) {
            fftwf_complex* in = fftwf_alloc_complex(static_cast<std::size_t>(g.mx) * g.my);
            fftwf_complex* out = fftwf_alloc_complex(static_cast<std::size_t>(g.mx) * g.my);
            plans_->inverse[key] =
                fftwf_plan_dft_2d(g.my, g.mx, in, out, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
            fftwf_free(in);
            fftwf_free(out);
        }
    }
}

GaborBank::~GaborBank() = default;

std::shared_ptr<const Spectrum> GaborBank::spectrum(const Plane& channel) const {
    if (channel.width != width_ || channel.height != height_) {
        throw InvalidInput("gabor bank: plane size does not match the bank");
    }
    double* in = fftw_alloc_real(static_cast<std::size_t>(nx_) * ny_);
    for (int y = 0; y < ny_; ++y) {
        const int sy = reflect_index(y - pad_, height_);
        for (int x = 0; x < nx_; ++x) {
            in[static_cast<std::size_t>(y) * nx_ + x] = channel(reflect_index(x - pad_, width_), sy);
        }
    }
    const int hx = nx_ / 2 + 1;
    auto* half = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(static_cast<std::size_t>(ny_) * hx));
    fftw_execute_dft_r2c(plans_->forward, in, reinterpret_cast<fftw_complex*>(half));
    auto s = std::make_shared<Spectrum>();
    s->nx = nx_;
    s->ny = ny_;
    s->data.resize(static_cast<std::size_t>(nx_) * ny_);
    for (int ky = 0; ky < ny_; ++ky) {
        std::complex<float>* row = &s->data[static_cast<std::size_t>(ky) * nx_];
        const std::complex<double>* src = &half[static_cast<std::size_t>(ky) * hx];
        const std::complex<double>* mirror = &half[static_cast<std::size_t>((ny_ - ky) % ny_) * hx];
        for (int kx = 0; kx < hx; ++kx) {
            row[kx] = {static_cast<float>(src[kx].real()), static_cast<float>(src[kx].imag())};
        }
        for (int kx = hx; kx < nx_; ++kx) {
            const std::complex<double> v = mirror[nx_ - kx];
            row[kx] = {static_cast<float>(v.real()), static_cast<float>(-v.imag())};
        }
    }
    fftw_free(in);
    fftw_free(half);
    return s;
}

ResponseGrid GaborBank::respond(const Spectrum& spectrum, int index) const {
    const GaborFilter& g = filters_.at(index);
    const std::size_t n = static_cast<std::size_t>(g.mx) * g.my;
    // Scratch per transform size. The input stays zero outside the spans
    // written for the current filter.
    struct Scratch {
        std::unique_ptr<fftwf_complex, decltype(&fftwf_free)> in{nullptr, &fftwf_free};
        std::unique_ptr<fftwf_complex, decltype(&fftwf_free)> out{nullptr, &fftwf_free};
    };
    thread_local std::map<std::size_t, Scratch> scratch;
    Scratch& buf = scratch[n];
    if (!buf.in) {
        buf.in.reset(fftwf_alloc_complex(n));
        buf.out.reset(fftwf_alloc_complex(n));
        std::fill_n(reinterpret_cast<float*>(buf.in.get()), 2 * n, 0.0f);
    }
    float* in = reinterpret_cast<float*>(buf.in.get());
    const float* w = g.weights.data();
    for (const auto& span : g.spans) {
        const float* src = reinterpret_cast<const float*>(
            &spectrum.data[static_cast<std::size_t>(g.rows[span.row]) * nx_ + span.src]);
        float* dst = in + 2 * (static_cast<std::size_t>(span.row) * g.mx + span.dst);
        for (int k = 0; k < span.len; ++k) {
            dst[2 * k] = src[2 * k] * w[k];
            dst[2 * k + 1] = src[2 * k + 1] * w[k];
        }
        w += span.len;
    }
    fftwf_execute_dft(plans_->inverse.at({g.my, g.mx}), buf.in.get(), buf.out.get());
    for (const auto& span : g.spans) {
        std::fill_n(in + 2 * (static_cast<std::size_t>(span.row) * g.mx + span.dst), 2 * span.len, 0.0f);
    }
    const auto* out = reinterpret_cast<const std::complex<float>*>(buf.out.get());

    ResponseGrid grid;
    grid.stride = g.stride;
    grid.x0 = ceil_div(pad_, g.stride);
    grid.y0 = ceil_div(pad_, g.stride);
    grid.nx = (pad_ + width_ - 1) / g.stride - grid.x0 + 1;
    grid.ny = (pad_ + height_ - 1) / g.stride - grid.y0 + 1;
    grid.mag.resize(static_cast<std::size_t>(grid.nx) * grid.ny);
    const double scale = 1.0 / (static_cast<double>(nx_) * ny_);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const std::complex<float> z = out[static_cast<std::size_t>(grid.y0 + j) * g.mx + grid.x0 + i];
            const double re = z.real();
            const double im = z.imag();
            grid.mag[static_cast<std::size_t>(j) * grid.nx + i] = std::sqrt(re * re + im * im) * scale;
        }
    }
    return grid;
}

std::shared_ptr<const GaborBank> gabor_bank(const GaborBankConfig& config, int width, int height) {
    struct Entry {
        GaborBankConfig config;
        int width;
        int height;
        std::shared_ptr<const GaborBank> bank;
    };
    static std::mutex m;
    static std::vector<Entry> cache;
    std::lock_guard lock(m);
    for (const auto& e : cache) {
        if (e.width == width && e.height == height && e.config == config) {
            return e.bank;
        }
    }
    auto bank = std::make_shared<const GaborBank>(config, width, height);
    cache.push_back({config, width, height, bank});
    return bank;
}

std::vector<double> gabor_impl(PatchContext& ctx, GaborMode mode) {
    std::vector<double> out;
    const int first = mode == GaborMode::L ? 3 : 0;
    const int last = mode == GaborMode::L ? 3 : 2;
    for (int c = first; c <= last; ++c) {
        for (const auto& grid : ctx.gabor(ctx.config().gabor, c)) {
            const auto ms = mean_std(grid.mag);
            out.push_back(ms[0]);
            out.push_back(ms[1]);
        }
    }
    return out;
}

std::vector<double> opponent_gabor_impl(PatchContext& ctx) {
    std::vector<double> out = gabor_impl(ctx, GaborMode::RGB);
    const GaborBankConfig& bank = ctx.config().gabor;
    const std::array<const std::vector<ResponseGrid>*, 3> resp{&ctx.gabor(bank, 0), &ctx.gabor(bank, 1),
                                                                &ctx.gabor(bank, 2)};
    const int orientations = bank.orientations;
    // Index of each coarse sample on grid g.
    const auto index_map = [](const ResponseGrid& coarse, const ResponseGrid& g) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(coarse.nx) * coarse.ny);
        for (int j = 0; j < coarse.ny; ++j) {
            const int gy = coarse.stride * (coarse.y0 + j) / g.stride - g.y0;
            for (int i = 0; i < coarse.nx; ++i) {
                const int gx = coarse.stride * (coarse.x0 + i) / g.stride - g.x0;
                idx[static_cast<std::size_t>(j) * coarse.nx + i] = static_cast<std::size_t>(gy) * g.nx + gx;
            }
        }
        return idx;
    };
    for (int m = 0; m < bank.scales; ++m) {
        for (int n = std::max(0, m - 1); n <= std::min(bank.scales - 1, m + 1); ++n) {
            for (int l = 0; l < orientations; ++l) {
                const int fm = m * orientations + l;
                const int fn = n * orientations + l;
                const ResponseGrid& a = (*resp[0])[fm];
                const ResponseGrid& b = (*resp[0])[fn];
                const ResponseGrid& coarse = a.stride >= b.stride ? a : b;
                const auto ia = index_map(coarse, a);
                const auto ib = index_map(coarse, b);
                const double* a0 = (*resp[0])[fm].mag.data();
                const double* a1 = (*resp[1])[fm].mag.data();
                const double* b1 = (*resp[1])[fn].mag.data();
                const double* b2 = (*resp[2])[fn].mag.data();
                std::vector<double> values(ia.size());
                for (std::size_t k = 0; k < ia.size(); ++k) {
                    const double d01 = a0[ia[k]] - b1[ib[k]];
                    const double d02 = a0[ia[k]] - b2[ib[k]];
                    const double d12 = a1[ia[k]] - b2[ib[k]];
                    values[k] = std::sqrt(d01 * d01 + d02 * d02 + d12 * d12);
                }
                const auto ms = mean_std(values);
                out.push_back(ms[0]);
                out.push_back(ms[1]);
            }
        }
    }
    return out;
}

std::vector<double> gist_impl(PatchContext& ctx) {
    const GaborBankConfig& bank_config = ctx.config().gist;
    const int grid = ctx.config().gist_grid;
    if (grid < 1 || grid > std::min(ctx.width(), ctx.height())) {
        throw InvalidInput("gist: grid size out of range");
    }
    const int pad = bank_config.pad_mode == PadMode::Circular ? 0 : bank_config.pad;
    std::vector<int> bx(grid + 1), by(grid + 1);
    for (int i = 0; i <= grid; ++i) {
        bx[i] = static_cast<int>(std::lround(double(i) * ctx.width() / grid));
        by[i] = static_cast<int>(std::lround(double(i) * ctx.height() / grid));
    }
    const auto cell_of = [](const std::vector<int>& bounds, int p) {
        int c = 0;
        while (c + 2 < static_cast<int>(bounds.size()) && p >= bounds[c + 1]) {
            ++c;
        }
        return c;
    };
    std::vector<double> out;
    for (const auto& g : ctx.gabor(bank_config, 3)) {
        std::vector<double> sum(static_cast<std::size_t>(grid) * grid, 0.0);
        std::vector<int> count(sum.size(), 0);
        std::vector<int> cxs(g.nx);
        for (int i = 0; i < g.nx; ++i) {
            cxs[i] = cell_of(bx, g.stride * (g.x0 + i) - pad);
        }
        for (int j = 0; j < g.ny; ++j) {
            const int cy = cell_of(by, g.stride * (g.y0 + j) - pad);
            const double* row = &g.mag[static_cast<std::size_t>(j) * g.nx];
            for (int i = 0; i < g.nx; ++i) {
                sum[cy * grid + cxs[i]] += row[i];
                ++count[cy * grid + cxs[i]];
            }
        }
        for (std::size_t k = 0; k < sum.size(); ++k) {
            out.push_back(count[k] > 0 ? sum[k] / count[k] : 0.0);
        }
    }
    return out;
}

std::vector<double> gabor(const Image& patch, GaborMode mode, const GaborBankConfig& bank) {
    DescriptorConfig config;
    config.gabor = bank;
    PatchContext ctx(patch, config);
    return gabor_impl(ctx, mode);
}

std::vector<double> opponent_gabor(const Image& patch, const GaborBankConfig& bank) {
    DescriptorConfig config;
    config.gabor = bank;
    PatchContext ctx(patch, config);
    return opponent_gabor_impl(ctx);
}

std::vector<double> gist(const Image& patch, const GaborBankConfig& bank, int grid) {
    DescriptorConfig config;
    config.gist = bank;
    config.gist_grid = grid;
    PatchContext ctx(patch, config);
    return gist_impl(ctx);
}

} // namespace texbench::desc

// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include "texbench/dtcwt.hpp"

#include <algorithm>
#include <cmath>

#include "texbench/error.hpp"
#include "texbench/filter.hpp"

namespace texbench::dtcwt {
namespace {

using Filter = std::vector<double>;

const Filter h0o{-0.05, 0.25, 0.6, 0.25, -0.05};
const Filter h1o{0.010714285714285713,  -0.05357142857142857, -0.26071428571428573, 0.6071428571428571,
                 -0.26071428571428573, -0.05357142857142857, 0.010714285714285713};
const Filter g0o{-0.010714285714285713, -0.05357142857142857, 0.26071428571428573, 0.6071428571428571,
                 0.26071428571428573,   -0.05357142857142857, -0.010714285714285713};
const Filter g1o{-0.05, -0.25, 0.6, -0.25, -0.05};

const Filter h0a{0.051130405283831656,  -0.013975370246888838, -0.10983605166597087,  0.26383956105893763,
                 0.7666284677930372,    0.5636557101270515,    0.0008736226952170968, -0.1002312195074762,
                 -0.0016896812725281543, -0.006181881892116438};
const Filter h0b{-0.006181881892116438, -0.0016896812725281543, -0.1002312195074762, 0.0008736226952170968,
                 0.5636557101270515,    0.7666284677930372,     0.26383956105893763, -0.10983605166597087,
                 -0.013975370246888838, 0.051130405283831656};
const Filter h1a{-0.006181881892116438, 0.0016896812725281543, -0.1002312195074762, -0.0008736226952170968,
                 0.5636557101270515,    -0.7666284677930372,   0.26383956105893763, 0.10983605166597087,
                 -0.013975370246888838, -0.051130405283831656};
const Filter h1b{-0.051130405283831656, -0.013975370246888838, 0.10983605166597087,   0.26383956105893763,
                 -0.7666284677930372,   0.5636557101270515,    -0.0008736226952170968, -0.1002312195074762,
                 0.0016896812725281543, -0.006181881892116438};
const Filter& g0a = h0b;
const Filter& g0b = h0a;
const Filter g1a{-0.051130405283831656, -0.013975370246888838, 0.10983605166597087,   0.26383956105893763,
                 -0.7666284677930372,   0.5636557101270515,    -0.0008736226952170968, -0.1002312195074762,
                 0.0016896812725281543, -0.006181881892116438};
const Filter g1b{-0.006181881892116438, 0.0016896812725281543, -0.1002312195074762, -0.0008736226952170968,
                 0.5636557101270515,    -0.7666284677930372,   0.26383956105893763, 0.10983605166597087,
                 -0.013975370246888838, -0.051130405283831656};

Mat transpose(const Mat& m) {
    Mat t(m.cols, m.rows);
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) {
            t(c, r) = m(r, c);
        }
    }
    return t;
}

Mat add(Mat a, const Mat& b) {
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        a.data[i] += b.data[i];
    }
    return a;
}

// Rows of x taken at the given (symmetrically reflected) indices.
Mat gather(const Mat& x, const std::vector<int>& rows) {
    Mat out(static_cast<int>(rows.size()), x.cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const int src = reflect_index(rows[i], x.rows);
        for (int c = 0; c < x.cols; ++c) {
            out(static_cast<int>(i), c) = x(src, c);
        }
    }
    return out;
}

// 'valid' column convolution.
Mat convolve_valid(const Mat& x, const Filter& h) {
    const int m = static_cast<int>(h.size());
    Mat out(x.rows - m + 1, x.cols);
    for (int i = 0; i < out.rows; ++i) {
        for (int k = 0; k < m; ++k) {
            const double w = h[k];
            const int src = i + m - 1 - k;
            for (int c = 0; c < x.cols; ++c) {
                out(i, c) += x(src, c) * w;
            }
        }
    }
    return out;
}

Filter taps(const Filter& h, int start) {
    Filter out;
    for (std::size_t i = start; i < h.size(); i += 2) {
        out.push_back(h[i]);
    }
    return out;
}

double dot(const Filter& a, const Filter& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

std::vector<int> arange(int begin, int end, int step, int shift = 0) {
    std::vector<int> v;
    for (int i = begin; i < end; i += step) {
        v.push_back(i + shift);
    }
    return v;
}

void put_rows(Mat& y, const Mat& src, int first, int step) {
    for (int i = 0; i < src.rows; ++i) {
        const int r = first + i * step;
        for (int c = 0; c < src.cols; ++c) {
            y(r, c) = src(i, c);
        }
    }
}

Mat colfilter(const Mat& x, const Filter& h) {
    const int m2 = static_cast<int>(h.size()) / 2;
    return convolve_valid(gather(x, arange(-m2, x.rows + m2, 1)), h);
}

Mat coldfilt(const Mat& x, const Filter& ha, const Filter& hb) {
    const int r = x.rows;
    if (r % 4 != 0) {
        throw InvalidInput("dtcwt: rows must be a multiple of 4");
    }
    const int m = static_cast<int>(ha.size());
    // xe[i] = reflect(i - m); t indexes xe.
    const auto xe_rows = [&](int offset) {
        std::vector<int> rows;
        for (int t = 5; t < r + 2 * m - 2; t += 4) {
            rows.push_back(t + offset - m);
        }
        return rows;
    };
    const Filter hao = taps(ha, 0), hae = taps(ha, 1), hbo = taps(hb, 0), hbe = taps(hb, 1);
    Mat y(r / 2, x.cols);
    const bool same = dot(ha, hb) > 0;
    const int s1 = same ? 0 : 1;
    const int s2 = same ? 1 : 0;
    put_rows(y, add(convolve_valid(gather(x, xe_rows(-1)), hao), convolve_valid(gather(x, xe_rows(-3)), hae)), s1,
             2);
    put_rows(y, add(convolve_valid(gather(x, xe_rows(0)), hbo), convolve_valid(gather(x, xe_rows(-2)), hbe)), s2,
             2);
    return y;
}

Mat colifilt(const Mat& x, const Filter& ha, const Filter& hb) {
    const int r = x.rows;
    if (r % 2 != 0) {
        throw InvalidInput("dtcwt: rows must be even");
    }
    const int m = static_cast<int>(ha.size());
    const int m2 = m / 2;
    Mat y(2 * r, x.cols);
    bool any = false;
    for (double v : x.data) {
        any = any || v != 0.0;
    }
    if (!any) {
        return y;
    }
    const bool same = dot(ha, hb) > 0;
    const Filter hao = taps(ha, 0), hae = taps(ha, 1), hbo = taps(hb, 0), hbe = taps(hb, 1);
    // xe[i] = reflect(i - m2).
    const auto rows_at = [&](int t0, int t_end, int shift) {
        std::vector<int> rows;
        for (int t = t0; t < t_end; t += 2) {
            rows.push_back(t + shift - m2);
        }
        return rows;
    };
    if (m2 % 2 == 0) {
        const int a = same ? 0 : -1;
        const int b = same ? -1 : 0;
        put_rows(y, convolve_valid(gather(x, rows_at(3, r + m, b - 2)), hae), 0, 4);
        put_rows(y, convolve_valid(gather(x, rows_at(3, r + m, a - 2)), hbe), 1, 4);
        put_rows(y, convolve_valid(gather(x, rows_at(3, r + m, b)), hao), 2, 4);
        put_rows(y, convolve_valid(gather(x, rows_at(3, r + m, a)), hbo), 3, 4);
    } else {
        const int a = same ? 0 : -1;
        const int b = same ? -1 : 0;
        put_rows(y, convolve_valid(gather(x, rows_at(2, r + m - 1, b)), hao), 0, 4);
        put_rows(y, convolve_valid(gather(x, rows_at(2, r + m - 1, a)), hbo), 1, 4);
        put_rows(y, convolve_valid(gather(x, rows_at(2, r + m - 1, b)), hae), 2, 4);
        put_rows(y, convolve_valid(gather(x, rows_at(2, r + m - 1, a)), hbe), 3, 4);
    }
    return y;
}

// Quads of y to the complex pair (p - q, p + q) stored in bands i and j.
void q2c(const Mat& y, Subbands& out, int i, int j) {
    const double s = std::sqrt(0.5);
    out.rows = y.rows / 2;
    out.cols = y.cols / 2;
    auto& lo = out.band[i];
    auto& hi = out.band[j];
    lo.resize(static_cast<std::size_t>(out.rows) * out.cols);
    hi.resize(lo.size());
    for (int r = 0; r < out.rows; ++r) {
        for (int c = 0; c < out.cols; ++c) {
            const std::complex<double> p(y(2 * r, 2 * c) * s, y(2 * r, 2 * c + 1) * s);
            const std::complex<double> q(y(2 * r + 1, 2 * c + 1) * s, -y(2 * r + 1, 2 * c) * s);
            const std::size_t k = static_cast<std::size_t>(r) * out.cols + c;
            lo[k] = p - q;
            hi[k] = p + q;
        }
    }
}

Mat c2q(const Subbands& w, int i, int j) {
    const double sc = std::sqrt(0.5);
    Mat x(w.rows * 2, w.cols * 2);
    for (int r = 0; r < w.rows; ++r) {
        for (int c = 0; c < w.cols; ++c) {
            const std::size_t k = static_cast<std::size_t>(r) * w.cols + c;
            const std::complex<double> p = w.band[i][k] * sc + w.band[j][k] * sc;
            const std::complex<double> q = w.band[i][k] * sc - w.band[j][k] * sc;
            x(2 * r, 2 * c) = p.real();
            x(2 * r, 2 * c + 1) = p.imag();
            x(2 * r + 1, 2 * c) = q.imag();
            x(2 * r + 1, 2 * c + 1) = -q.real();
        }
    }
    return x;
}

Mat extend_to_multiple_of_4(const Mat& x) {
    Mat y = x;
    if (y.rows % 4 != 0) {
        Mat e(y.rows + 2, y.cols);
        for (int r = 0; r < e.rows; ++r) {
            const int src = std::clamp(r - 1, 0, y.rows - 1);
            for (int c = 0; c < y.cols; ++c) {
                e(r, c) = y(src, c);
            }
        }
        y = std::move(e);
    }
    if (y.cols % 4 != 0) {
        Mat e(y.rows, y.cols + 2);
        for (int r = 0; r < y.rows; ++r) {
            for (int c = 0; c < e.cols; ++c) {
                e(r, c) = y(r, std::clamp(c - 1, 0, y.cols - 1));
            }
        }
        y = std::move(e);
    }
    return y;
}

Mat crop_border(const Mat& z, int rows, int cols) {
    const int r0 = z.rows != rows ? 1 : 0;
    const int c0 = z.cols != cols ? 1 : 0;
    if (z.rows - 2 * r0 != rows || z.cols - 2 * c0 != cols) {
        throw InvalidInput("dtcwt: highpass sizes are not consistent");
    }
    Mat out(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            out(r, c) = z(r + r0, c + c0);
        }
    }
    return out;
}

} // namespace

Pyramid forward(const Mat& input, int levels) {
    if (levels < 0 || input.rows < 1 || input.cols < 1) {
        throw InvalidInput("dtcwt: invalid input or level count");
    }
    Mat x = input;
    if (x.rows % 2 != 0 || x.cols % 2 != 0) {
        Mat e(x.rows + x.rows % 2, x.cols + x.cols % 2);
        for (int r = 0; r < e.rows; ++r) {
            for (int c = 0; c < e.cols; ++c) {
                e(r, c) = x(std::min(r, x.rows - 1), std::min(c, x.cols - 1));
            }
        }
        x = std::move(e);
    }
    Pyramid out;
    if (levels == 0) {
        out.lowpass = x;
        return out;
    }
    out.highpasses.resize(levels);

    Mat lo = transpose(colfilter(x, h0o));
    Mat hi = transpose(colfilter(x, h1o));
    Mat lolo = transpose(colfilter(lo, h0o));
    q2c(transpose(colfilter(hi, h0o)), out.highpasses[0], 0, 5);
    q2c(transpose(colfilter(lo, h1o)), out.highpasses[0], 2, 3);
    q2c(transpose(colfilter(hi, h1o)), out.highpasses[0], 1, 4);

    for (int level = 1; level < levels; ++level) {
        lolo = extend_to_multiple_of_4(lolo);
        lo = transpose(coldfilt(lolo, h0b, h0a));
        hi = transpose(coldfilt(lolo, h1b, h1a));
        lolo = transpose(coldfilt(lo, h0b, h0a));
        q2c(transpose(coldfilt(hi, h0b, h0a)), out.highpasses[level], 0, 5);
        q2c(transpose(coldfilt(lo, h1b, h1a)), out.highpasses[level], 2, 3);
        q2c(transpose(coldfilt(hi, h1b, h1a)), out.highpasses[level], 1, 4);
    }
    out.lowpass = std::move(lolo);
    return out;
}

Mat inverse(const Pyramid& pyramid) {
    const int levels = static_cast<int>(pyramid.highpasses.size());
    Mat z = pyramid.lowpass;
    for (int level = levels; level >= 2; --level) {
        const Subbands& yh = pyramid.highpasses[level - 1];
        const Mat lh = c2q(yh, 0, 5);
        const Mat hl = c2q(yh, 2, 3);
        const Mat hh = c2q(yh, 1, 4);
        const Mat y1 = add(colifilt(z, g0b, g0a), colifilt(lh, g1b, g1a));
        const Mat y2 = add(colifilt(hl, g0b, g0a), colifilt(hh, g1b, g1a));
        z = transpose(add(colifilt(transpose(y1), g0b, g0a), colifilt(transpose(y2), g1b, g1a)));
        const Subbands& next = pyramid.highpasses[level - 2];
        z = crop_border(z, 2 * next.rows, 2 * next.cols);
    }
    if (levels >= 1) {
        const Subbands& yh = pyramid.highpasses[0];
        const Mat lh = c2q(yh, 0, 5);
        const Mat hl = c2q(yh, 2, 3);
        const Mat hh = c2q(yh, 1, 4);
        const Mat y1 = add(colfilter(z, g0o), colfilter(lh, g1o));
        const Mat y2 = add(colfilter(hl, g0o), colfilter(hh, g1o));
        z = transpose(add(colfilter(transpose(y1), g0o), colfilter(transpose(y2), g1o)));
    }
    return z;
}

} // namespace texbench::dtcwt

/* linsolve.cpp */

#include "prodcheck/linsolve.hpp"

#include <gmpxx.h>

#include <algorithm>

namespace prodcheck {

std::optional<std::vector<Rational>> solve_linear_system(const Matrix& a,
                                                         const std::vector<Rational>& rhs) {
    size_t n = a.size();
    if (rhs.size() != n) throw DomainError("solve_linear_system: shape mismatch");
    if (n == 0) return std::vector<Rational>{};

    // clear denominators row-wise into an integer augmented matrix
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n + 1));
    for (size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw DomainError("solve_linear_system: shape mismatch");
        mpz_class lcm = 1;
        for (size_t j = 0; j < n; ++j) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a[i][j].get_den().get_mpz_t());
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), rhs[i].get_den().get_mpz_t());
        for (size_t j = 0; j < n; ++j) m[i][j] = a[i][j].get_num() * (lcm / a[i][j].get_den());
        m[i][n] = rhs[i].get_num() * (lcm / rhs[i].get_den());
    }

    // Bareiss fraction-free elimination; divisions are exact by construction
    mpz_class prev = 1;
    for (size_t k = 0; k + 1 <= n; ++k) {
        size_t pivot = k;
        while (pivot < n && m[pivot][k] == 0) ++pivot;
        if (pivot == n) return std::nullopt; // singular
        if (pivot != k) std::swap(m[pivot], m[k]);
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j <= n; ++j) {
                mpz_class t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }

    std::vector<Rational> v(n);
    for (size_t i = n; i-- > 0;) {
        Rational acc(m[i][n]);
        for (size_t j = i + 1; j < n; ++j) acc -= Rational(m[i][j]) * v[j];
        v[i] = acc / Rational(m[i][i]);
        v[i].canonicalize();
    }
    return v;
}

// ---------------------------------------------------------------------------
// exact simplex

namespace {

struct Tableau {
    size_t rows = 0;
    size_t cols = 0; // original variable columns (rhs kept separately)
    std::vector<std::vector<Rational>> t; // rows x cols
    std::vector<Rational> rhs;
    std::vector<size_t> basis; // per row: column index, or >= cols for artificials

    void pivot(size_t r, size_t c, std::vector<std::vector<Rational>>& cost_rows,
               std::vector<Rational>& cost_vals) {
        Rational p = t[r][c];
        for (auto& x : t[r]) x /= p;
        rhs[r] /= p;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || t[i][c] == 0) continue;
            Rational f = t[i][c];
            for (size_t j = 0; j < cols; ++j) t[i][j] -= f * t[r][j];
            rhs[i] -= f * rhs[r];
        }
        for (size_t k = 0; k < cost_rows.size(); ++k) {
            if (cost_rows[k][c] == 0) continue;
            Rational f = cost_rows[k][c];
            for (size_t j = 0; j < cols; ++j) cost_rows[k][j] -= f * t[r][j];
            cost_vals[k] -= f * rhs[r];
        }
        basis[r] = c;
    }
};

// Bland's rule minimization of the last row of cost_rows, entering restricted
// to columns where every earlier cost row is zero. Objectives here are
// bounded below (phase-1 sum, then single nonnegative variables), so an
// unbounded ray indicates an internal error.
void run_simplex(Tableau& tab, std::vector<std::vector<Rational>>& cost_rows,
                 std::vector<Rational>& cost_vals) {
    auto& r = cost_rows.back();
    for (;;) {
        size_t enter = tab.cols;
        for (size_t j = 0; j < tab.cols; ++j) {
            if (r[j] >= 0) continue;
            bool allowed = true;
            for (size_t k = 0; k + 1 < cost_rows.size() && allowed; ++k)
                if (cost_rows[k][j] != 0) allowed = false;
            if (allowed) {
                enter = j;
                break;
            }
        }
        if (enter == tab.cols) return; // optimal on the allowed face

        size_t leave = tab.rows;
        Rational best;
        for (size_t i = 0; i < tab.rows; ++i) {
            if (tab.t[i][enter] <= 0) continue;
            Rational ratio = tab.rhs[i] / tab.t[i][enter];
            if (leave == tab.rows || ratio < best ||
                (ratio == best && tab.basis[i] < tab.basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == tab.rows)
            throw InternalError("simplex: unbounded direction in a bounded problem");
        tab.pivot(leave, enter, cost_rows, cost_vals);
    }
}

} // namespace

LpResult lexmin_nonnegative_solution(const Matrix& a, const std::vector<Rational>& rhs) {
    size_t m = a.size();
    size_t n = m == 0 ? 0 : a[0].size();
    for (const auto& row : a)
        if (row.size() != n) throw DomainError("lexmin: ragged matrix");
    if (rhs.size() != m) throw DomainError("lexmin: shape mismatch");

    if (n == 0) {
        for (const auto& b : rhs)
            if (b != 0) return {};
        return {true, {}};
    }

    // phase 1: artificial columns n .. n+m-1
    Tableau tab;
    tab.rows = m;
    tab.cols = n + m;
    tab.t.assign(m, std::vector<Rational>(tab.cols, Rational(0)));
    tab.rhs.resize(m);
    tab.basis.resize(m);
    for (size_t i = 0; i < m; ++i) {
        bool flip = rhs[i] < 0;
        for (size_t j = 0; j < n; ++j) tab.t[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
        tab.rhs[i] = flip ? Rational(-rhs[i]) : rhs[i];
        tab.t[i][n + i] = 1;
        tab.basis[i] = n + i;
    }

    std::vector<std::vector<Rational>> cost_rows;
    std::vector<Rational> cost_vals;
    cost_rows.emplace_back(tab.cols, Rational(0));
    cost_vals.emplace_back(0);
    for (size_t j = 0; j < n; ++j) {
        Rational s(0);
        for (size_t i = 0; i < m; ++i) s += tab.t[i][j];
        cost_rows[0][j] = -s; // reduced cost of column j under the all-artificial basis
    }
    for (size_t i = 0; i < m; ++i) cost_vals[0] += tab.rhs[i];

    run_simplex(tab, cost_rows, cost_vals);
    if (cost_vals[0] != 0) return {}; // infeasible

    // drive zero-valued artificials out of the basis; all-zero rows are redundant
    std::vector<size_t> keep;
    for (size_t i = 0; i < tab.rows; ++i) {
        if (tab.basis[i] < n) {
            keep.push_back(i);
            continue;
        }
        size_t c = n;
        for (size_t j = 0; j < n; ++j)
            if (tab.t[i][j] != 0) {
                c = j;
                break;
            }
        if (c < n) {
            tab.pivot(i, c, cost_rows, cost_vals);
            keep.push_back(i);
        }
        // else: redundant constraint, dropped below
    }
    Tableau cleaned;
    cleaned.rows = keep.size();
    cleaned.cols = n;
    for (size_t i : keep) {
        tab.t[i].resize(n);
        cleaned.t.push_back(std::move(tab.t[i]));
        cleaned.rhs.push_back(tab.rhs[i]);
        cleaned.basis.push_back(tab.basis[i]);
    }

    // lexicographic phase: minimize v_0, then v_1, ... freezing each optimum
    cost_rows.clear();
    cost_vals.clear();
    for (size_t k = 0; k < n; ++k) {
        std::vector<Rational> r(n, Rational(0));
        Rational val(0);
        r[k] = 1;
        for (size_t i = 0; i < cleaned.rows; ++i) {
            if (cleaned.basis[i] != k) continue;
            for (size_t j = 0; j < n; ++j) r[j] -= cleaned.t[i][j];
            val = cleaned.rhs[i];
        }
        cost_rows.push_back(std::move(r));
        cost_vals.push_back(val);
        run_simplex(cleaned, cost_rows, cost_vals);
    }

    std::vector<Rational> point(n, Rational(0));
    for (size_t i = 0; i < cleaned.rows; ++i)
        if (cleaned.basis[i] < n) point[cleaned.basis[i]] = cleaned.rhs[i];
    return {true, std::move(point)};
}

} // namespace prodcheck

#include "surgery/plumbing.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace surgery::plumbing {

namespace {

using Matrix = std::vector<std::vector<Integer>>;

Matrix zeros(int n) { return Matrix(n, std::vector<Integer>(n, 0)); }

// Determinant by fraction-free Gaussian elimination (Bareiss).
Integer determinant(Matrix a) {
  int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (int t = 0; t < n - 1; ++t) {
    if (a[t][t] == 0) {
      int piv = -1;
      for (int r = t + 1; r < n; ++r)
        if (a[r][t] != 0) { piv = r; break; }
      if (piv < 0) return 0;
      std::swap(a[t], a[piv]);
      sign = -sign;
    }
    for (int r = t + 1; r < n; ++r)
      for (int c = t + 1; c < n; ++c)
        a[r][c] = (a[t][t] * a[r][c] - a[r][t] * a[t][c]) / prev;
    prev = a[t][t];
  }
  return sign < 0 ? Integer(-a[n - 1][n - 1]) : a[n - 1][n - 1];
}

bool negative_definite(const Matrix& q) {
  int n = static_cast<int>(q.size());
  for (int s = 1; s <= n; ++s) {
    Matrix lead(s, std::vector<Integer>(s));
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) lead[i][j] = q[i][j];
    Integer d = determinant(std::move(lead));
    if ((s % 2 == 0 && d <= 0) || (s % 2 == 1 && d >= 0)) return false;
  }
  return true;
}

// Solves Q y = rhs exactly over the rationals (Q invertible).
std::vector<Rational> solve(const Matrix& q, const std::vector<Integer>& rhs) {
  int n = static_cast<int>(q.size());
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = Rational(q[i][j]);
    a[i][n] = Rational(rhs[i]);
  }
  for (int t = 0; t < n; ++t) {
    int piv = -1;
    for (int r = t; r < n; ++r)
      if (!a[r][t].is_zero()) { piv = r; break; }
    if (piv < 0) throw std::domain_error("solve: singular matrix");
    std::swap(a[t], a[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == t || a[r][t].is_zero()) continue;
      Rational factor = a[r][t] / a[t][t];
      for (int c = t; c <= n; ++c) a[r][c] -= factor * a[t][c];
    }
  }
  std::vector<Rational> y(n);
  for (int i = 0; i < n; ++i) y[i] = a[i][n] / a[i][i];
  return y;
}

bool is_characteristic(const PlumbingForm& f, const CharVector& v) {
  if (static_cast<int>(v.K.size()) != f.n) return false;
  for (int i = 0; i < f.n; ++i)
    if ((v.K[i] - f.Q[i][i]) % 2 != 0) return false;
  return true;
}

// Reduces K into the box Q_ii <= K_i <= -Q_ii by moves K -> K +- 2Qe_i,
// each of which strictly increases K^2. Stays in the same coset.
void box_reduce(const PlumbingForm& f, CharVector& v) {
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < f.n; ++i) {
      while (v.K[i] > -f.Q[i][i]) {
        for (int j = 0; j < f.n; ++j) v.K[j] += 2 * f.Q[i][j];
        moved = true;
      }
      while (v.K[i] < f.Q[i][i]) {
        for (int j = 0; j < f.n; ++j) v.K[j] -= 2 * f.Q[i][j];
        moved = true;
      }
    }
  }
}

struct Snf {
  std::vector<Integer> diag;  // nonnegative
  Matrix u;                   // Q = U * S * V, |det U| = 1
};

Snf smith(const Matrix& q_in) {
  int n = static_cast<int>(q_in.size());
  Matrix a = q_in;
  Matrix u = zeros(n);
  for (int i = 0; i < n; ++i) u[i][i] = 1;

  // Row op A <- E A requires U <- U E^{-1} to keep Q = U A_ops.
  auto row_add = [&](int dst, int src, const Integer& c) {
    for (int j = 0; j < n; ++j) a[dst][j] += c * a[src][j];
    for (int i = 0; i < n; ++i) u[i][src] -= c * u[i][dst];
  };
  auto row_swap = [&](int r1, int r2) {
    std::swap(a[r1], a[r2]);
    for (int i = 0; i < n; ++i) std::swap(u[i][r1], u[i][r2]);
  };
  auto col_add = [&](int dst, int src, const Integer& c) {
    for (int i = 0; i < n; ++i) a[i][dst] += c * a[i][src];
  };
  auto col_swap = [&](int c1, int c2) {
    for (int i = 0; i < n; ++i) std::swap(a[i][c1], a[i][c2]);
  };

  for (int t = 0; t < n; ++t) {
    while (true) {
      int pi = -1, pj = -1;
      for (int i = t; i < n; ++i)
        for (int j = t; j < n; ++j)
          if (a[i][j] != 0 &&
              (pi < 0 || abs(a[i][j]) < abs(a[pi][pj]))) { pi = i; pj = j; }
      if (pi < 0) break;  // all-zero tail
      if (pi != t) row_swap(t, pi);
      if (pj != t) col_swap(t, pj);
      bool clean = true;
      for (int i = t + 1; i < n; ++i)
        if (a[i][t] != 0) {
          Integer c = -(a[i][t] / a[t][t]);
          if (c != 0) row_add(i, t, c);
          if (a[i][t] != 0) clean = false;
        }
      for (int j = t + 1; j < n; ++j)
        if (a[t][j] != 0) {
          Integer c = -(a[t][j] / a[t][t]);
          if (c != 0) col_add(j, t, c);
          if (a[t][j] != 0) clean = false;
        }
      if (clean) break;
    }
  }
  Snf out;
  out.diag.resize(n);
  for (int i = 0; i < n; ++i) out.diag[i] = abs(a[i][i]);
  out.u = std::move(u);
  return out;
}

}  // namespace

PlumbingForm intersection_form(std::int64_t p, std::int64_t m, std::int64_t k, Framing f) {
  if (!(0 < k && k < p)) throw std::domain_error("intersection_form: need 0 < k < p");
  if (k < 2) throw std::domain_error("intersection_form: need k >= 2");
  if (f == Framing::positive) {
    if (m - k < 3) throw std::domain_error("intersection_form: positive framing needs m-k >= 3");
  } else {
    if (k - m < 3 || m >= 0)
      throw std::domain_error("intersection_form: negative framing needs k-m >= 3, m < 0");
  }

  PlumbingForm form;
  form.kind = f;
  form.p = p;
  form.m = m;
  form.k = k;

  std::vector<std::int64_t> chain_lens;
  bool has_single = (f == Framing::negative);
  if (f == Framing::positive)
    chain_lens = {m - k - 1, p - k - 1, k - 1};
  else
    chain_lens = {k - 1, p - k - 1};

  int n = 1;  // hub
  for (auto L : chain_lens) n += static_cast<int>(L);
  if (has_single) n += 1;
  form.n = n;
  form.Q = zeros(n);
  form.hub = n - 1;
  form.Q[form.hub][form.hub] = (f == Framing::positive) ? -3 : -2;

  int off = 0;
  for (auto L : chain_lens) {
    std::vector<int> leg;
    for (int t = 0; t < L; ++t) {
      int v = off + t;
      form.Q[v][v] = -2;
      if (t + 1 < L) {
        form.Q[v][v + 1] = 1;
        form.Q[v + 1][v] = 1;
      }
      leg.push_back(v);
    }
    if (L > 0) {
      int last = off + static_cast<int>(L) - 1;
      form.Q[last][form.hub] = 1;
      form.Q[form.hub][last] = 1;
      form.legs.push_back(leg);
    }
    off += static_cast<int>(L);
  }
  if (has_single) {
    int v = n - 2;
    form.Q[v][v] = m - k;
    form.Q[v][form.hub] = 1;
    form.Q[form.hub][v] = 1;
    form.legs.push_back({v});
  }

  form.det = determinant(form.Q);
  Integer expected = Integer(p) * m - Integer(k) * k;
  if (abs(form.det) != abs(expected))
    throw std::logic_error("intersection_form: |det Q| != |pm - k^2|");
  if (!negative_definite(form.Q))
    throw std::domain_error("intersection_form: matrix is not negative definite");
  return form;
}

std::vector<CharVector> spin_c_cosets(const PlumbingForm& f) {
  Snf snf = smith(f.Q);
  int n = f.n;
  std::vector<CharVector> out;
  std::vector<Integer> t(n, 0);
  while (true) {
    CharVector v;
    v.K.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      v.K[i] = f.Q[i][i];
      for (int j = 0; j < n; ++j) v.K[i] += 2 * snf.u[i][j] * t[j];
    }
    box_reduce(f, v);
    out.push_back(std::move(v));
    int pos = 0;
    while (pos < n) {
      t[pos] += 1;
      if (snf.diag[pos] > 1 && t[pos] < snf.diag[pos]) break;
      t[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  return out;
}

bool same_coset(const PlumbingForm& f, const CharVector& a, const CharVector& b) {
  if (!is_characteristic(f, a) || !is_characteristic(f, b)) return false;
  std::vector<Integer> rhs(f.n);
  for (int i = 0; i < f.n; ++i) rhs[i] = (a.K[i] - b.K[i]) / 2;
  auto y = solve(f.Q, rhs);
  for (const auto& v : y)
    if (!v.is_integer()) return false;
  return true;
}

namespace {

constexpr std::int64_t kNoValue = INT64_MIN;

// DP table over (x_a, x_b) pairs, stored dense with offsets.
struct PairTable {
  std::int64_t lo_a = 0, lo_b = 0;
  std::int64_t na = 0, nb = 0;
  std::vector<std::optional<Integer>> val;

  void init(std::int64_t la, std::int64_t ha, std::int64_t lb, std::int64_t hb) {
    lo_a = la;
    lo_b = lb;
    na = ha - la + 1;
    nb = hb - lb + 1;
    val.assign(static_cast<size_t>(na * nb), std::nullopt);
  }
  std::optional<Integer>& at(std::int64_t a, std::int64_t b) {
    return val[static_cast<size_t>((a - lo_a) * nb + (b - lo_b))];
  }
};

}  // namespace

Rational d_plumbing(const PlumbingForm& f, const CharVector& coset_rep, int box_margin) {
  if (!is_characteristic(f, coset_rep))
    throw std::domain_error("d_plumbing: vector is not characteristic");
  CharVector k0 = coset_rep;
  box_reduce(f, k0);

  int n = f.n;
  // One Gauss-Jordan pass on [Q | I | K0] yields Q^{-1} and y0 = Q^{-1} K0.
  std::vector<std::vector<Rational>> qinv(n, std::vector<Rational>(n));
  std::vector<Rational> y0(n);
  {
    int w = 2 * n + 1;
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(w));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a[i][j] = Rational(f.Q[i][j]);
      a[i][n + i] = Rational(1);
      a[i][w - 1] = Rational(k0.K[i]);
    }
    for (int t = 0; t < n; ++t) {
      int piv = -1;
      for (int r = t; r < n; ++r)
        if (!a[r][t].is_zero()) { piv = r; break; }
      if (piv < 0) throw std::domain_error("d_plumbing: singular form");
      std::swap(a[t], a[piv]);
      for (int r = 0; r < n; ++r) {
        if (r == t || a[r][t].is_zero()) continue;
        Rational factor = a[r][t] / a[t][t];
        for (int c = t; c < w; ++c) a[r][c] -= factor * a[t][c];
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) qinv[i][j] = a[i][n + j] / a[i][i];
      y0[i] = a[i][w - 1] / a[i][i];
    }
  }
  Rational k0sq;
  for (int i = 0; i < n; ++i) k0sq += Rational(k0.K[i]) * y0[i];

  // Maximize D(x) = 4 x.K0 + 4 x.Qx subject to K0 + 2Qx in the box, i.e.
  // (Qx)_i in [A_i, B_i].
  std::vector<Integer> A(n), B(n);
  for (int i = 0; i < n; ++i) {
    A[i] = (f.Q[i][i] - k0.K[i]) / 2 - box_margin;
    B[i] = (-f.Q[i][i] - k0.K[i]) / 2 + box_margin;
  }

  // Per-vertex ranges of x from x = Q^{-1}(Qx) and interval arithmetic.
  std::vector<std::int64_t> lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    Rational mn, mx;
    for (int j = 0; j < n; ++j) {
      Rational c1 = qinv[i][j] * Rational(A[j]);
      Rational c2 = qinv[i][j] * Rational(B[j]);
      mn += (c1 < c2 ? c1 : c2);
      mx += (c1 < c2 ? c2 : c1);
    }
    Integer fl, ce;
    mpz_fdiv_q(fl.get_mpz_t(), mn.num().get_mpz_t(), mn.den().get_mpz_t());
    mpz_cdiv_q(ce.get_mpz_t(), mx.num().get_mpz_t(), mx.den().get_mpz_t());
    lo[i] = fl.get_si();
    hi[i] = ce.get_si();
  }

  auto obj = [&](int v, std::int64_t x) -> Integer {
    return 4 * f.Q[v][v] * Integer(x) * x + 4 * k0.K[v] * Integer(x);
  };
  auto row_ok = [&](int v, const Integer& row_sum) {
    return row_sum >= A[v] && row_sum <= B[v];
  };

  // Chain messages M(x_end, x_hub).
  int h = f.hub;
  std::vector<PairTable> msgs;
  for (const auto& leg : f.legs) {
    int L = static_cast<int>(leg.size());
    PairTable prev;
    for (int t = 0; t < L; ++t) {
      int v = leg[t];
      int next = (t + 1 < L) ? leg[t + 1] : h;
      PairTable cur;
      cur.init(lo[v], hi[v], lo[next], hi[next]);
      for (std::int64_t xv = lo[v]; xv <= hi[v]; ++xv) {
        for (std::int64_t xn = lo[next]; xn <= hi[next]; ++xn) {
          if (t == 0) {
            // row v: Q_vv xv + xn in [A,B]
            if (!row_ok(v, f.Q[v][v] * Integer(xv) + xn)) continue;
            cur.at(xv, xn) = obj(v, xv);
          } else {
            int pv = leg[t - 1];
            // row v: xprev + Q_vv xv + xn in [A,B]
            Integer base = f.Q[v][v] * Integer(xv) + xn;
            std::optional<Integer> best;
            for (std::int64_t xp = lo[pv]; xp <= hi[pv]; ++xp) {
              if (!row_ok(v, base + xp)) continue;
              auto& cand = prev.at(xp, xv);
              if (!cand) continue;
              Integer total = *cand + 8 * Integer(xp) * xv;
              if (!best || total > *best) best = total;
            }
            if (best) cur.at(xv, xn) = *best + obj(v, xv);
          }
        }
      }
      prev = std::move(cur);
    }
    msgs.push_back(std::move(prev));
  }

  // Hub combination: track running sums of leg-end values.
  std::optional<Integer> answer;
  for (std::int64_t xh = lo[h]; xh <= hi[h]; ++xh) {
    // G(s) = best sum over processed legs with leg-end values summing to s
    std::int64_t glo = 0, ghi = 0;
    std::vector<std::optional<Integer>> g(1, Integer(0));
    for (size_t li = 0; li < f.legs.size(); ++li) {
      int e = f.legs[li].back();
      std::int64_t nlo = glo + lo[e], nhi = ghi + hi[e];
      std::vector<std::optional<Integer>> ng(static_cast<size_t>(nhi - nlo + 1));
      for (std::int64_t s = glo; s <= ghi; ++s) {
        auto& base = g[static_cast<size_t>(s - glo)];
        if (!base) continue;
        for (std::int64_t xe = lo[e]; xe <= hi[e]; ++xe) {
          auto& mv = msgs[li].at(xe, xh);
          if (!mv) continue;
          Integer total = *base + *mv + 8 * Integer(xh) * xe;
          auto& slot = ng[static_cast<size_t>(s + xe - nlo)];
          if (!slot || total > *slot) slot = total;
        }
      }
      g = std::move(ng);
      glo = nlo;
      ghi = nhi;
    }
    for (std::int64_t s = glo; s <= ghi; ++s) {
      auto& base = g[static_cast<size_t>(s - glo)];
      if (!base) continue;
      if (!row_ok(h, f.Q[h][h] * Integer(xh) + s)) continue;
      Integer total = *base + obj(h, xh);
      if (!answer || total > *answer) answer = total;
    }
  }
  if (!answer) throw std::logic_error("d_plumbing: no feasible vector in box");

  return (k0sq + Rational(*answer) + Rational(n)) / Rational(4);
}

namespace {

void check_closed_form_regime(std::int64_t p, std::int64_t m, std::int64_t k, int s, Framing f) {
  if (s < 0 || s > 3) throw std::domain_error("d_closed_form: s must be in 0..3");
  if (!(0 < k && k < p) || k < 2) throw std::domain_error("d_closed_form: need 0 < k < p, k >= 2");
  if (f == Framing::positive && m - k < 3)
    throw std::domain_error("d_closed_form: positive framing needs m-k >= 3");
  if (f == Framing::negative && (k - m < 3 || m >= 0))
    throw std::domain_error("d_closed_form: negative framing needs k-m >= 3, m < 0");
}

Rational closed_form_eval(std::int64_t p, std::int64_t m, std::int64_t k, int s, bool positive) {
  Integer D = Integer(p) * m - Integer(k) * k;
  Rational corr(Integer(s) * s * p, D);
  if (positive) {
    if (k % 2 == 1) return rat(m - 4 * s - 2, 4) + corr;
    return rat(p + m - 2 * k - 4 * s - 2, 4) + corr;
  }
  if (k % 2 == 1) return rat(m + 4 * s, 4) + corr;
  return rat(p + m - 2 * k + 4 * s, 4) + corr;
}

}  // namespace

Rational d_closed_form(std::int64_t p, std::int64_t m, std::int64_t k, int s, Framing f) {
  check_closed_form_regime(p, m, k, s, f);
  return closed_form_eval(p, m, k, s, f == Framing::positive);
}

Rational g_sequence(std::int64_t p, std::int64_t m, std::int64_t k, int s, Framing f) {
  if (s < 0 || s > 2) throw std::domain_error("g_sequence: s must be in 0..2");
  check_closed_form_regime(p, m, k, s, f);
  Integer D = Integer(p) * m - Integer(k) * k;
  Rational base = f == Framing::positive ? Rational(-1) : Rational(1);
  return base + Rational(Integer(2 * s + 1) * p, D);
}

Rational d_closed_form_unchecked(std::int64_t p, std::int64_t m, std::int64_t k, int s) {
  Integer D = Integer(p) * m - Integer(k) * k;
  if (D == 0) throw std::domain_error("d_closed_form_unchecked: pm - k^2 = 0");
  return closed_form_eval(p, m, k, s, D > 0);
}

CharVector paper_maximizer(std::int64_t p, std::int64_t m, std::int64_t k, Framing f, int s) {
  if (s < 0 || s > 3) throw std::domain_error("paper_maximizer: s must be in 0..3");
  PlumbingForm form = intersection_form(p, m, k, f);
  CharVector v;
  v.K.assign(form.n, 0);
  if (f == Framing::positive) {
    std::int64_t off2 = (m - k - 1);
    std::int64_t off3 = (m - k - 1) + (p - k - 1);
    if (k % 2 == 0)
      v.K[off3 + k / 2 - 1] = 2;
    else
      v.K[off2 + (p - k) / 2 - 1] = 2;
    v.K[form.hub] = -1;
    v.K[0] += 2 * s;  // s steps of u = (2,0,...,0|...)
  } else {
    std::int64_t off2 = k - 1;
    std::int64_t pos = (k % 2 == 0) ? k / 2 - 1 : off2 + (p - k) / 2 - 1;
    v.K[pos] = (s == 0) ? -2 : 2;
    v.K[form.n - 2] = (s == 0) ? k - m : m - k + 2 * s;
  }
  return v;
}

}  // namespace surgery::plumbing

#include "xtilt/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace xtilt {

std::string weight_to_string(const Weight& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s;
}

Weight parse_weight(const std::string& text) {
  Weight w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    int x = 0;
    try {
      x = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad weight coordinate '" + item + "'");
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size()) throw std::invalid_argument("bad weight coordinate '" + item + "'");
    w.push_back(x);
  }
  if (w.empty()) throw std::invalid_argument("empty weight");
  return w;
}

Weight operator+(const Weight& a, const Weight& b) {
  Weight r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Weight operator-(const Weight& a, const Weight& b) {
  Weight r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Weight operator*(int n, const Weight& a) {
  Weight r(a);
  for (auto& x : r) x *= n;
  return r;
}

namespace {

using IntMat = std::vector<std::vector<int>>;

IntMat type_a(int n) {
  IntMat a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    a[i][i] = 2;
    if (i > 0) a[i][i - 1] = -1;
    if (i + 1 < n) a[i][i + 1] = -1;
  }
  return a;
}

IntMat cartan_for_label(const std::string& label) {
  if (label.size() < 2) throw std::invalid_argument("bad root system label: " + label);
  const char t = label[0];
  const std::string digits = label.substr(1);
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("bad root system label: " + label);
  if (digits.size() > 3) throw std::invalid_argument("root system rank too large: " + label);
  const int n = std::stoi(digits);
  switch (t) {
    case 'A':
      if (n < 1) break;
      return type_a(n);
    case 'B': {
      if (n < 2) break;
      IntMat a = type_a(n);
      a[n - 2][n - 1] = -2;
      return a;
    }
    case 'C': {
      if (n < 2) break;
      IntMat a = type_a(n);
      a[n - 1][n - 2] = -2;
      return a;
    }
    case 'D': {
      if (n < 4) break;
      IntMat a = type_a(n);
      a[n - 2][n - 1] = a[n - 1][n - 2] = 0;
      a[n - 3][n - 1] = a[n - 1][n - 3] = -1;
      return a;
    }
    case 'E': {
      if (n < 6 || n > 8) break;
      // Bourbaki: 1-3-4-5-6-7-8 chain with 2 attached to 4.
      IntMat a(n, std::vector<int>(n, 0));
      for (int i = 0; i < n; ++i) a[i][i] = 2;
      auto link = [&](int i, int j) { a[i - 1][j - 1] = a[j - 1][i - 1] = -1; };
      link(1, 3);
      link(3, 4);
      link(2, 4);
      for (int i = 4; i < n; ++i) link(i, i + 1);
      return a;
    }
    case 'F':
      if (n != 4) break;
      return {{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
    case 'G':
      if (n != 2) break;
      return {{2, -1}, {-3, 2}};
    default:
      break;
  }
  throw std::invalid_argument("unsupported root system label: " + label);
}

// Leading principal minors of a symmetric rational matrix are all positive.
bool positive_definite(std::vector<std::vector<Rational>> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (b[k][k] <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Rational f = b[i][k] / b[k][k];
      for (std::size_t j = k; j < n; ++j) b[i][j] -= f * b[k][j];
    }
  }
  return true;
}

}  // namespace

RootSystem RootSystem::from_label(const std::string& label) { return from_cartan(cartan_for_label(label), label); }

RootSystem RootSystem::from_cartan(const std::vector<std::vector<int>>& a, const std::string& label) {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("empty Cartan matrix");
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("Cartan matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j && a[i][j] != 2) throw std::invalid_argument("Cartan matrix diagonal must be 2");
      if (i != j && a[i][j] > 0) throw std::invalid_argument("Cartan off-diagonal entries must be <= 0");
      if (i != j && (a[i][j] == 0) != (a[j][i] == 0))
        throw std::invalid_argument("Cartan matrix zero pattern must be symmetric");
    }

  // Symmetrizer: propagate d_j = d_i A(j,i)/A(i,j) along each connected component.
  std::vector<Rational> dq(n, Rational(0));
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    dq[s] = 1;
    comp[s] = ncomp;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || a[i][j] == 0) continue;
        const Rational want = dq[i] * a[j][i] / a[i][j];
        if (comp[j] < 0) {
          comp[j] = ncomp;
          dq[j] = want;
          queue.push_back(j);
        } else if (dq[j] != want) {
          throw std::invalid_argument("Cartan matrix is not symmetrizable");
        }
      }
    }
    ++ncomp;
  }
  // Scale every component to the smallest positive integer vector.
  std::vector<int> d(n, 0);
  for (int c = 0; c < ncomp; ++c) {
    Integer l = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (comp[i] == c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), dq[i].get_den().get_mpz_t());
    Integer g = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (comp[i] == c) {
        Integer x = Rational(dq[i] * l).get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      }
    for (std::size_t i = 0; i < n; ++i)
      if (comp[i] == c) {
        Integer x = Rational(dq[i] * l).get_num() / g;
        if (x > 3) throw std::invalid_argument("symmetrizer outside {1,2,3}: not of finite type");
        d[i] = static_cast<int>(x.get_si());
      }
  }

  std::vector<std::vector<Rational>> b(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b[i][j] = Rational(a[i][j] * d[j]);
  if (!positive_definite(b)) throw std::invalid_argument("Cartan matrix is not of finite type");

  RootSystem rs;
  rs.label_ = label;
  rs.a_ = a;
  rs.d_ = d;
  // Inverse Cartan matrix by Gauss-Jordan over Q.
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (m[p][c] == 0) ++p;
    std::swap(m[p], m[c]);
    const Rational inv = 1 / m[c][c];
    for (auto& x : m[c]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  rs.inv_.assign(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rs.inv_[i][j] = m[i][n + j];
  rs.compute_positive_roots();
  return rs;
}

void RootSystem::check_weight(const Weight& w) const {
  if (w.size() != rank())
    throw std::invalid_argument("weight " + weight_to_string(w) + " has length " + std::to_string(w.size()) +
                                ", expected " + std::to_string(rank()));
}

std::vector<Rational> RootSystem::root_coords(const Weight& w) const {
  // w = sum_i c_i alpha_i = c^T A, so c = w^T A^{-1}.
  const std::size_t n = rank();
  std::vector<Rational> c(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) c[j] += w[i] * inv_[i][j];
  return c;
}

std::optional<std::vector<long>> RootSystem::difference_coeffs(const Weight& mu, const Weight& lambda) const {
  const auto c = root_coords(lambda - mu);
  std::vector<long> out;
  for (const auto& x : c) {
    if (x.get_den() != 1 || x < 0) return std::nullopt;
    out.push_back(x.get_num().get_si());
  }
  return out;
}

Rational RootSystem::height(const Weight& w) const {
  Rational h = 0;
  for (const auto& x : root_coords(w)) h += x;
  return h;
}

Rational RootSystem::inner(const Weight& x, const Weight& y) const {
  // (x, alpha_i) = x_i d_i; expand y in simple roots.
  const auto c = root_coords(y);
  Rational s = 0;
  for (std::size_t i = 0; i < rank(); ++i) s += c[i] * x[i] * d_[i];
  return s;
}

bool RootSystem::is_dominant(const Weight& w) const {
  return std::all_of(w.begin(), w.end(), [](int x) { return x >= 0; });
}

Weight RootSystem::reflect(const Weight& w, std::size_t i) const {
  Weight r = w;
  const int k = w[i];
  for (std::size_t j = 0; j < rank(); ++j) r[j] -= k * a_[i][j];
  return r;
}

Weight RootSystem::dominant_conjugate(const Weight& w) const {
  Weight r = w;
  for (;;) {
    std::size_t i = 0;
    while (i < rank() && r[i] >= 0) ++i;
    if (i == rank()) return r;
    r = reflect(r, i);
  }
}

bool RootSystem::processing_before(const Weight& x, const Weight& y) const {
  const Rational hx = height(x), hy = height(y);
  if (hx != hy) return hx > hy;
  return x < y;
}

void RootSystem::compute_positive_roots() {
  // Root strings on simple-root coordinates.
  const std::size_t n = rank();
  std::vector<std::vector<int>> roots;
  std::set<std::vector<int>> seen;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> c(n, 0);
    c[i] = 1;
    roots.push_back(c);
    seen.insert(c);
  }
  for (std::size_t idx = 0; idx < roots.size(); ++idx) {
    const auto beta = roots[idx];
    for (std::size_t i = 0; i < n; ++i) {
      int pairing = 0;
      for (std::size_t j = 0; j < n; ++j) pairing += beta[j] * a_[j][i];
      int p = 0;
      for (;;) {
        auto down = beta;
        down[i] -= p + 1;
        if (!seen.count(down)) break;
        ++p;
      }
      if (p - pairing > 0) {
        auto up = beta;
        up[i] += 1;
        if (seen.insert(up).second) roots.push_back(up);
      }
    }
  }
  std::stable_sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) {
    return std::accumulate(x.begin(), x.end(), 0) < std::accumulate(y.begin(), y.end(), 0);
  });
  pos_roots_.clear();
  for (const auto& c : roots) {
    Weight w(n, 0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) w[i] += c[j] * a_[j][i];
    pos_roots_.push_back(w);
  }
}

std::vector<Weight> weights_below(const RootSystem& rs, const Weight& lambda, bool prune,
                                  std::optional<long> height_bound) {
  rs.check_weight(lambda);
  if (!prune && !height_bound) throw std::invalid_argument("weights_below without pruning needs a height bound");
  std::map<Weight, long> depth{{lambda, 0}};
  std::deque<Weight> queue{lambda};
  while (!queue.empty()) {
    const Weight mu = queue.front();
    queue.pop_front();
    const long h = depth[mu];
    if (height_bound && h >= *height_bound) continue;
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      Weight nu = mu - rs.simple_root(i);
      if (depth.count(nu)) continue;
      if (prune && !rs.leq(rs.dominant_conjugate(nu), lambda)) continue;
      depth[nu] = h + 1;
      queue.push_back(nu);
    }
  }
  std::vector<Weight> out;
  for (const auto& kv : depth) out.push_back(kv.first);
  std::sort(out.begin(), out.end(), [&](const Weight& x, const Weight& y) {
    if (depth[x] != depth[y]) return depth[x] < depth[y];
    return x < y;
  });
  return out;
}

Character weyl_character(const RootSystem& rs, const Weight& lambda) {
  rs.check_weight(lambda);
  if (!rs.is_dominant(lambda)) throw std::invalid_argument("weyl_character needs a dominant weight");
  const auto weights = weights_below(rs, lambda, true);
  const Weight rho = rs.rho();
  const Weight lr = lambda + rho;
  const Rational top = rs.inner(lr, lr);
  Character mult;
  for (const auto& mu : weights) {
    if (mu == lambda) {
      mult[mu] = 1;
      continue;
    }
    Rational sum = 0;
    for (const auto& alpha : rs.positive_roots()) {
      for (int k = 1;; ++k) {
        const Weight nu = mu + k * alpha;
        if (!rs.leq(nu, lambda)) break;
        auto it = mult.find(nu);
        if (it != mult.end() && it->second != 0) sum += Rational(it->second) * rs.inner(nu, alpha);
      }
    }
    const Weight mr = mu + rho;
    const Rational denom = top - rs.inner(mr, mr);
    const Rational m = 2 * sum / denom;
    if (m.get_den() != 1 || m < 0) throw std::logic_error("Freudenthal recursion produced a non-integer");
    if (m != 0) mult[mu] = m.get_num().get_si();
  }
  return mult;
}

Integer weyl_dimension(const RootSystem& rs, const Weight& lambda) {
  const Weight rho = rs.rho();
  const Weight lr = lambda + rho;
  Rational dim = 1;
  for (const auto& alpha : rs.positive_roots()) dim *= rs.inner(lr, alpha) / rs.inner(rho, alpha);
  if (dim.get_den() != 1) throw std::logic_error("Weyl dimension formula produced a non-integer");
  return dim.get_num();
}

}  // namespace xtilt

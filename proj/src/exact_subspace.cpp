#include "pptgap/exact_subspace.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

#include "pptgap/rng.hpp"

namespace pptgap::exact {

// ---------------------------------------------------------------------------
// GaussianRational

GaussianRational::GaussianRational(mpq_class re, mpq_class im)
    : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw std::domain_error("GaussianRational: division by zero");
  const mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / norm;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussianRational::to_string() const {
  const bool has_re = sgn(re_) != 0;
  const bool has_im = sgn(im_) != 0;
  if (!has_im) return re_.get_str();
  std::string out;
  if (has_re) {
    out = re_.get_str();
    if (sgn(im_) > 0) out += '+';
  }
  return out + im_.get_str() + " i";
}

namespace {

mpq_class parse_rational(std::string_view text, std::string_view whole) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  const auto fail = [&](const std::string& why) {
    return ParseError("invalid Gaussian rational '" + std::string(whole) + "': " + why);
  };
  std::size_t pos = 0;
  if (pos < s.size() && s[pos] == '-') ++pos;
  const std::size_t num_start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == num_start) throw fail("missing numerator");
  if (pos < s.size()) {
    if (s[pos] != '/') throw fail("unexpected character");
    const std::size_t den_start = ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == den_start || pos != s.size()) throw fail("malformed denominator");
    if (s.find_first_not_of('0', den_start) == std::string::npos) throw fail("zero denominator");
  }
  mpq_class q(s, 10);
  q.canonicalize();
  return q;
}

}  // namespace

GaussianRational parse_gaussian_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty Gaussian rational");
  if (s.back() != 'i') return {parse_rational(s, text), mpq_class(0)};

  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t p = body.size(); p-- > 1;)
    if (body[p] == '+' || body[p] == '-') {
      split = p;
      break;
    }
  const std::string re_text = split == std::string::npos ? "" : body.substr(0, split);
  const std::string im_text = split == std::string::npos ? body : body.substr(split);

  mpq_class im;
  if (im_text.empty() || im_text == "+") {
    im = 1;
  } else if (im_text == "-") {
    im = -1;
  } else {
    im = parse_rational(im_text, text);
  }
  const mpq_class re = re_text.empty() ? mpq_class(0) : parse_rational(re_text, text);
  return {re, im};
}

// ---------------------------------------------------------------------------
// Tensors

ExactVector ExactTensor::flat() const {
  ExactVector out;
  out.reserve(left.size() * right.size());
  for (const auto& a : left)
    for (const auto& b : right) out.push_back(a * b);
  return out;
}

bool ExactTensor::is_rank_one() const {
  const auto nonzero = [](const ExactVector& v) {
    return std::any_of(v.begin(), v.end(), [](const GaussianRational& x) { return !x.is_zero(); });
  };
  return !left.empty() && left.size() == right.size() && nonzero(left) && nonzero(right);
}

// ---------------------------------------------------------------------------
// Elimination

void Echelon::reduce(ExactVector& v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t p = pivots_[r];
    if (v[p].is_zero()) continue;
    const GaussianRational factor = v[p];
    const ExactVector& row = rows_[r];
    for (std::size_t c = p; c < length_; ++c)
      if (!row[c].is_zero()) v[c] -= factor * row[c];
  }
}

bool Echelon::insert(ExactVector v) {
  if (v.size() != length_) throw std::invalid_argument("Echelon: vector length mismatch");
  reduce(v);
  const auto it =
      std::find_if(v.begin(), v.end(), [](const GaussianRational& x) { return !x.is_zero(); });
  if (it == v.end()) return false;
  const std::size_t p = static_cast<std::size_t>(it - v.begin());
  const GaussianRational inv = GaussianRational(1) / v[p];
  for (std::size_t c = p; c < length_; ++c)
    if (!v[c].is_zero()) v[c] *= inv;
  // Keep rows fully reduced so reduce() can process them in any order.
  for (auto& row : rows_) {
    if (row[p].is_zero()) continue;
    const GaussianRational factor = row[p];
    for (std::size_t c = p; c < length_; ++c)
      if (!v[c].is_zero()) row[c] -= factor * v[c];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

bool Echelon::contains(ExactVector v) const {
  if (v.size() != length_) throw std::invalid_argument("Echelon: vector length mismatch");
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](const GaussianRational& x) { return x.is_zero(); });
}

int span_dim(std::span<const ExactVector> vectors) {
  return static_cast<int>(independent_subset(vectors).size());
}

std::vector<std::size_t> independent_subset(std::span<const ExactVector> vectors) {
  std::vector<std::size_t> picked;
  if (vectors.empty()) return picked;
  const std::size_t length = vectors.front().size();
  for (const auto& v : vectors)
    if (v.size() != length) throw std::invalid_argument("span_dim: vectors differ in length");
  Echelon echelon(length);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (echelon.insert(vectors[i])) picked.push_back(i);
  return picked;
}

// ---------------------------------------------------------------------------
// Generating sets

namespace {

void validate(const GeneratingSet& g) {
  if (g.generators.empty()) throw InvalidGenerator("generating set is empty");
  for (std::size_t i = 0; i < g.generators.size(); ++i) {
    const auto& t = g.generators[i];
    if (static_cast<int>(t.left.size()) != g.k || static_cast<int>(t.right.size()) != g.k)
      throw InvalidGenerator("generator " + std::to_string(i) + " does not have length k = " +
                             std::to_string(g.k));
    if (!t.is_rank_one())
      throw InvalidGenerator("generator " + std::to_string(i) + " has a zero factor");
  }
}

}  // namespace

GeneratingSet flip_closure(const GeneratingSet& g) {
  GeneratingSet out{g.k, {}};
  const auto push_unique = [&](const ExactTensor& t) {
    if (std::find(out.generators.begin(), out.generators.end(), t) == out.generators.end())
      out.generators.push_back(t);
  };
  for (const auto& t : g.generators) push_unique(t);
  for (const auto& t : g.generators) push_unique(t.flipped());
  return out;
}

SubspaceDims sym_skew_dims(const GeneratingSet& g) {
  validate(g);
  const GeneratingSet closed = flip_closure(g);
  const std::size_t length = static_cast<std::size_t>(g.k) * static_cast<std::size_t>(g.k);
  Echelon whole(length), sym(length), skew(length);
  for (const auto& t : closed.generators) {
    const ExactVector x = t.flat();
    const ExactVector fx = t.flipped().flat();
    ExactVector plus(length), minus(length);
    for (std::size_t i = 0; i < length; ++i) {
      plus[i] = x[i] + fx[i];
      minus[i] = x[i] - fx[i];
    }
    whole.insert(x);
    sym.insert(std::move(plus));
    skew.insert(std::move(minus));
  }
  return {static_cast<int>(whole.rank()), static_cast<int>(sym.rank()),
          static_cast<int>(skew.rank())};
}

int minimal_local_space(const GeneratingSet& g) {
  validate(g);
  const GeneratingSet closed = flip_closure(g);
  Echelon local(static_cast<std::size_t>(g.k));
  for (const auto& t : closed.generators) local.insert(t.left);
  return static_cast<int>(local.rank());
}

AuditReport inequality_audit(const GeneratingSet& g) {
  AuditReport rep;
  rep.dims = sym_skew_dims(g);
  rep.n = minimal_local_space(g);
  const long n = rep.n;
  const long sym = rep.dims.dim_sym;
  const long skew = rep.dims.dim_skew;
  rep.skew_bound_holds = n * sym >= 2 * skew;
  rep.local_bound_holds = 2 * sym >= n;
  rep.equality_a = 2 * sym == n;
  rep.equality_b = n * sym == 2 * skew;
  if (rep.equality_a) rep.case_a_consistent = skew == sym;
  if (rep.equality_b) rep.case_b_consistent = sym == n - 1 && skew == n * (n - 1) / 2;
  return rep;
}

GeneratingSet build_sharp_family(int k) {
  if (k < 2) throw std::invalid_argument("build_sharp_family: k must be at least 2");
  const auto basis = [k](int i) {
    ExactVector e(static_cast<std::size_t>(k));
    e[static_cast<std::size_t>(i)] = 1;
    return e;
  };
  // 0-based: a_i = e_i ⊗ (e_0 + 2e_1 + … + 2e_{i-1} + e_i)
  const auto a_gen = [&](int i) {
    ExactVector w(static_cast<std::size_t>(k));
    w[0] = 1;
    for (int j = 1; j < i; ++j) w[static_cast<std::size_t>(j)] = 2;
    w[static_cast<std::size_t>(i)] = 1;
    return ExactTensor{basis(i), w};
  };
  // level n (0-based top index), 1 ≤ i ≤ n:
  // r_i = (e_0 + 2e_1 + … + 2e_{i-1} + e_i + … + e_n) ⊗ (e_i + … + e_n)
  const auto r_gen = [&](int i, int n) {
    ExactVector left(static_cast<std::size_t>(k)), right(static_cast<std::size_t>(k));
    left[0] = 1;
    for (int j = 1; j < i; ++j) left[static_cast<std::size_t>(j)] = 2;
    for (int j = i; j <= n; ++j) {
      left[static_cast<std::size_t>(j)] = 1;
      right[static_cast<std::size_t>(j)] = 1;
    }
    return ExactTensor{left, right};
  };

  GeneratingSet g{k, {}};
  g.generators.push_back(a_gen(1));
  g.generators.push_back(a_gen(1).flipped());
  for (int n = 2; n < k; ++n) {
    g.generators.push_back(a_gen(n));
    g.generators.push_back(a_gen(n).flipped());
    for (int i = 1; i <= n; ++i) g.generators.push_back(r_gen(i, n));
  }
  return g;
}

GeneratingSet random_generating_set(int k, int count, std::uint64_t seed, int lo, int hi) {
  if (k < 1 || count < 1) throw std::invalid_argument("random_generating_set: bad size");
  GeneratingSet g{k, {}};
  for (int t = 0; t < count; ++t) {
    Rng rng(seed, static_cast<std::uint64_t>(t));
    const auto draw = [&] {
      ExactVector v(static_cast<std::size_t>(k));
      do {
        for (auto& x : v) {
          const long re = rng.uniform_int(lo, hi);
          // imaginary parts on roughly half of the entries
          const long im = rng.uniform01() < 0.5 ? 0 : rng.uniform_int(lo, hi);
          x = GaussianRational(mpq_class(re), mpq_class(im));
        }
      } while (std::all_of(v.begin(), v.end(), [](const GaussianRational& x) { return x.is_zero(); }));
      return v;
    };
    ExactVector left = draw();
    ExactVector right = draw();
    g.generators.push_back({std::move(left), std::move(right)});
  }
  return g;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

ExactVector parse_factor(const std::string& text, std::size_t line_no) {
  ExactVector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_gaussian_rational(item));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

GeneratingSet parse_generating_set(std::istream& in) {
  GeneratingSet g;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto bar = line.find('|');
    if (bar == std::string::npos || line.find('|', bar + 1) != std::string::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected exactly one '|'");
    ExactTensor t{parse_factor(line.substr(0, bar), line_no),
                  parse_factor(line.substr(bar + 1), line_no)};
    if (t.left.size() != t.right.size())
      throw ParseError("line " + std::to_string(line_no) + ": factors differ in length");
    if (g.k == 0) g.k = static_cast<int>(t.left.size());
    if (static_cast<int>(t.left.size()) != g.k)
      throw ParseError("line " + std::to_string(line_no) + ": expected factors of length " +
                       std::to_string(g.k));
    g.generators.push_back(std::move(t));
  }
  if (g.generators.empty()) throw ParseError("generating set file has no generators");
  return g;
}

void write_generating_set(std::ostream& out, const GeneratingSet& g) {
  const auto write_factor = [&](const ExactVector& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i].to_string();
  };
  for (const auto& t : g.generators) {
    write_factor(t.left);
    out << " | ";
    write_factor(t.right);
    out << '\n';
  }
}

DenseVector to_dense(const ExactVector& v) {
  DenseVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].to_complex();
  return out;
}

}  // namespace pptgap::exact

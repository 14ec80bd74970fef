#include "chen/bar.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <functional>
#include <stdexcept>

namespace chen {

namespace {

int sgn(int e) { return (e % 2 == 0) ? 1 : -1; }

std::string coefficient_prefix(const Rational& c) {
  if (c == 1) return "";
  if (c == -1) return "-";
  return c.get_str() + " ";
}

}  // namespace

void Dga::add(const std::string& name, int degree, const std::string& d_image) {
  if (name.empty() || name == "fresh" || name == "1") throw InputError("invalid generator name '" + name + "'");
  for (char ch : name)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
      throw InputError("invalid generator name '" + name + "'");
  if (degree < 0) throw InputError("generator '" + name + "' has negative degree");
  if (has(name)) throw InputError("duplicate generator '" + name + "'");
  std::string image = d_image;
  if (d_image == "fresh") {
    image = "d" + name;
    if (has(image)) throw InputError("fresh generator '" + image + "' collides with an existing name");
    gens_[image] = {image, degree + 1, ""};
  } else if (!d_image.empty()) {
    if (!has(d_image)) throw InputError("d-image '" + d_image + "' of '" + name + "' is not declared");
    const Generator& target = gens_.at(d_image);
    if (target.degree != degree + 1)
      throw InputError("d-image '" + d_image + "' of '" + name + "' must have degree " + std::to_string(degree + 1));
    if (!target.d_image.empty()) throw InputError("d-image '" + d_image + "' of '" + name + "' is not closed");
  }
  gens_[name] = {name, degree, image};
}

const Generator& Dga::at(const std::string& name) const {
  auto it = gens_.find(name);
  if (it == gens_.end()) throw InputError("unknown generator '" + name + "'");
  return it->second;
}

Dga Dga::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("invalid generator JSON", e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!j.is_array()) throw InputError("generator spec must be a JSON array");
  Dga g;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("name") || !item.contains("degree"))
      throw InputError("each generator needs \"name\" and \"degree\"");
    if (!item["name"].is_string() || !item["degree"].is_number_integer())
      throw InputError("generator \"name\" must be a string and \"degree\" an integer");
    std::string image;
    if (item.contains("d")) {
      const auto& dv = item["d"];
      if (dv.is_string())
        image = dv.get<std::string>();
      else if (!(dv.is_number_integer() && dv.get<int>() == 0) && !dv.is_null())
        throw InputError("generator \"d\" must be a name, 0 or \"fresh\"");
    }
    g.add(item["name"].get<std::string>(), item["degree"].get<int>(), image);
  }
  return g;
}

int degree(const Dga& g, const Monomial& m) {
  int s = 0;
  for (const auto& x : m) s += g.degree(x);
  return s;
}

int normalize(const Dga& g, Monomial& m) {
  int sign = 1;
  for (size_t i = 1; i < m.size(); ++i)
    for (size_t j = i; j > 0 && m[j] < m[j - 1]; --j) {
      if (g.degree(m[j]) % 2 && g.degree(m[j - 1]) % 2) sign = -sign;
      std::swap(m[j], m[j - 1]);
    }
  for (size_t i = 1; i < m.size(); ++i)
    if (m[i] == m[i - 1] && g.degree(m[i]) % 2) return 0;
  return sign;
}

std::string to_string(const Monomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < m.size(); ++i) s += (i ? "∧" : "") + m[i];
  return s;
}

DgaElement DgaElement::one() {
  DgaElement e;
  e.add({}, 1);
  return e;
}

DgaElement DgaElement::generator(const std::string& name) {
  DgaElement e;
  e.add({name}, 1);
  return e;
}

DgaElement DgaElement::monomial(const Dga& g, Monomial m, const Rational& c) {
  DgaElement e;
  const int s = normalize(g, m);
  if (s != 0) e.add(m, c * s);
  return e;
}

void DgaElement::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

DgaElement& DgaElement::operator+=(const DgaElement& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

DgaElement operator*(const Rational& c, DgaElement a) {
  if (c == 0) return {};
  for (auto& [m, v] : a.terms_) v *= c;
  return a;
}

DgaElement wedge(const Dga& g, const DgaElement& a, const DgaElement& b) {
  DgaElement r;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      const int s = normalize(g, m);
      if (s != 0) r.add(m, ca * cb * s);
    }
  return r;
}

DgaElement d(const Dga& g, const DgaElement& a) {
  DgaElement r;
  for (const auto& [m, c] : a.terms()) {
    int prefix = 0;
    for (size_t i = 0; i < m.size(); ++i) {
      const std::string& image = g.at(m[i]).d_image;
      if (!image.empty()) {
        Monomial t = m;
        t[i] = image;
        const int s = normalize(g, t);
        if (s != 0) r.add(t, c * s * sgn(prefix));
      }
      prefix += g.degree(m[i]);
    }
  }
  return r;
}

std::string to_string(const DgaElement& a) {
  if (a.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    if (!first) s += c < 0 ? " - " : " + ";
    const Rational shown = first ? c : Rational(abs(c));
    s += coefficient_prefix(shown);
    s += to_string(m);
    first = false;
  }
  return s;
}

std::string_view to_string(BarVariant v) { return v == BarVariant::Based ? "based" : "hochschild"; }

BarVariant parse_variant(std::string_view s) {
  if (s == "based") return BarVariant::Based;
  if (s == "hochschild") return BarVariant::Hochschild;
  throw std::invalid_argument("unknown bar variant '" + std::string(s) + "'");
}

void BarElement::add(const Dga& g, Monomial left, std::vector<Monomial> word, Monomial right, const Rational& c) {
  if (c == 0) return;
  if (variant_ == BarVariant::Based && (!left.empty() || !right.empty()))
    throw InputError("based bar elements cannot carry boundary factors");
  int sign = normalize(g, left) * normalize(g, right);
  for (auto& w : word) {
    sign *= normalize(g, w);
    if (degree(g, w) < 1) throw InputError("bar word entries must have positive degree");
  }
  if (sign == 0) return;
  BarKey key{std::move(left), std::move(word), std::move(right)};
  auto [it, inserted] = terms_.emplace(std::move(key), c * sign);
  if (!inserted) {
    it->second += c * sign;
    if (it->second == 0) terms_.erase(it);
  }
}

void BarElement::add(const Dga& g, const DgaElement& left, const std::vector<DgaElement>& word,
                     const DgaElement& right, const Rational& c) {
  std::vector<Monomial> picked(word.size());
  std::function<void(size_t, const Monomial&, const Rational&)> rec = [&](size_t i, const Monomial& l,
                                                                           const Rational& coef) {
    if (i == word.size()) {
      for (const auto& [r, cr] : right.terms()) add(g, l, picked, r, coef * cr);
      return;
    }
    for (const auto& [m, cm] : word[i].terms()) {
      picked[i] = m;
      rec(i + 1, l, coef * cm);
    }
  };
  for (const auto& [l, cl] : left.terms()) rec(0, l, c * cl);
}

BarElement& BarElement::operator+=(const BarElement& o) {
  if (o.variant_ != variant_) throw std::invalid_argument("cannot add bar elements of different variants");
  for (const auto& [k, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

int degree(const Dga& g, const BarKey& k) {
  int s = degree(g, k.left) + degree(g, k.right);
  for (const auto& w : k.word) s += degree(g, w) - 1;
  return s;
}

BarElement bar_differential(const Dga& g, const BarElement& e) {
  const bool hoch = e.variant() == BarVariant::Hochschild;
  BarElement r(e.variant());
  for (const auto& [key, c] : e.terms()) {
    const size_t k = key.word.size();
    std::vector<DgaElement> w;
    std::vector<int> p;
    for (const auto& m : key.word) {
      w.push_back(DgaElement::monomial(g, m));
      p.push_back(degree(g, m));
    }
    const DgaElement L = DgaElement::monomial(g, key.left);
    const DgaElement R = DgaElement::monomial(g, key.right);
    const int pL = hoch ? degree(g, key.left) : 0;
    int total = 0;
    for (int x : p) total += x;

    if (hoch) r.add(g, d(g, L), w, R, c);
    int prefix = 0;
    for (size_t i = 0; i < k; ++i) {
      const int idx = static_cast<int>(i) + 1;
      auto word = w;
      word[i] = d(g, w[i]);
      r.add(g, L, word, R, c * sgn(pL + prefix + idx));
      prefix += p[i];
      if (i + 1 < k) {
        std::vector<DgaElement> merged(w.begin(), w.begin() + i);
        merged.push_back(wedge(g, w[i], w[i + 1]));
        merged.insert(merged.end(), w.begin() + i + 2, w.end());
        r.add(g, L, merged, R, c * sgn(pL + prefix + idx + 1));
      }
    }
    if (hoch) {
      if (k > 0) {
        const std::vector<DgaElement> tail(w.begin() + 1, w.end());
        r.add(g, wedge(g, L, w[0]), tail, R, -c * sgn(pL));
        const std::vector<DgaElement> head(w.begin(), w.end() - 1);
        r.add(g, L, head, wedge(g, w[k - 1], R), c * sgn(pL + total - p[k - 1] + static_cast<int>(k) + 1));
      }
      r.add(g, L, w, d(g, R), c * sgn(pL + total + static_cast<int>(k)));
    }
  }
  return r;
}

BarElement certify_d_squared(const Dga& g, const BarElement& e) { return bar_differential(g, bar_differential(g, e)); }

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, const Dga& g) : text_(text), g_(g) {}

  std::vector<std::pair<std::string_view, size_t>> split() const {
    std::vector<std::pair<std::string_view, size_t>> parts;
    size_t start = 0;
    for (size_t i = 0; i <= text_.size(); ++i)
      if (i == text_.size() || text_[i] == '|') {
        parts.emplace_back(text_.substr(start, i - start), start);
        start = i + 1;
      }
    return parts;
  }

  Monomial monomial(std::string_view s, size_t offset) const {
    Monomial m;
    size_t i = 0;
    auto skip = [&] {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip();
    if (i < s.size() && s[i] == '1') {
      ++i;
      skip();
      if (i != s.size()) throw ParseError("unexpected character after '1'", offset + i);
      return m;
    }
    while (true) {
      skip();
      const size_t begin = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      if (i == begin) throw ParseError("expected generator name", offset + begin);
      const std::string name(s.substr(begin, i - begin));
      if (!g_.has(name)) throw ParseError("unknown generator '" + name + "'", offset + begin);
      m.push_back(name);
      skip();
      if (i == s.size()) return m;
      if (s[i] != '*') throw ParseError("expected '*' or '|'", offset + i);
      ++i;
    }
  }

 private:
  std::string_view text_;
  const Dga& g_;
};

std::string_view trim_left(std::string_view s, size_t& offset) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
    ++offset;
  }
  return s;
}

}  // namespace

BarElement parse_bar_word(std::string_view text, const Dga& g, BarVariant v) {
  BarElement e(v);
  WordParser parser(text, g);
  Monomial left, right;
  std::vector<Monomial> word;
  bool blank = true;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
  if (!blank) {
    const auto parts = parser.split();
    for (size_t i = 0; i < parts.size(); ++i) {
      size_t offset = parts[i].second;
      std::string_view s = trim_left(parts[i].first, offset);
      const bool is_left = s.starts_with("L:");
      const bool is_right = s.starts_with("R:");
      if (is_left || is_right) {
        if (v == BarVariant::Based) throw ParseError("based words take no boundary factors", offset);
        if (is_left && i != 0) throw ParseError("'L:' must come first", offset);
        if (is_right && i + 1 != parts.size()) throw ParseError("'R:' must come last", offset);
        (is_left ? left : right) = parser.monomial(s.substr(2), offset + 2);
        continue;
      }
      Monomial m = parser.monomial(s, offset);
      Monomial sorted = m;
      if (normalize(g, sorted) != 0 && degree(g, m) < 1)
        throw ParseError("word entries must have positive degree", offset);
      word.push_back(std::move(m));
    }
  }
  e.add(g, std::move(left), std::move(word), std::move(right), 1);
  return e;
}

std::string format_term(const BarKey& k, const Rational& c) {
  std::string s = coefficient_prefix(c);
  if (!k.left.empty()) s += to_string(k.left) + "·";
  s += "[";
  for (size_t i = 0; i < k.word.size(); ++i) s += (i ? "|" : "") + to_string(k.word[i]);
  s += "]";
  if (!k.right.empty()) s += "·" + to_string(k.right);
  return s;
}

std::vector<std::string> format_terms(const BarElement& e) {
  std::vector<std::string> out;
  for (const auto& [k, c] : e.terms()) out.push_back(format_term(k, c));
  return out;
}

namespace {

Form one_form(int n) { return Form::scalar(Polynomial::constant(n, 1)); }

Form realize_monomial(const Binding& b, const Monomial& m, int n) {
  Form f = one_form(n);
  for (const auto& x : m) f = wedge(f, b.at(x));
  return f;
}

}  // namespace

PathForm realize(const Dga& g, const BarElement& e, Binding binding, QuadratureConfig q, std::optional<int> degree_hint) {
  q.validate();
  for (const auto& [name, form] : binding) {
    if (!g.has(name)) throw InputError("binding for unknown generator '" + name + "'");
    if (form.degree() != g.degree(name))
      throw InputError("binding for '" + name + "' has degree " + std::to_string(form.degree()) + ", expected " +
                       std::to_string(g.degree(name)));
  }
  int n = -1;
  for (const auto& [name, form] : binding) {
    if (n >= 0 && form.dim() != n) throw InputError("bindings disagree on dimension");
    n = form.dim();
  }
  for (const auto& [name, form] : Binding(binding)) {
    const std::string& image = g.at(name).d_image;
    if (!image.empty() && !binding.count(image)) binding.emplace(image, exterior_derivative(form));
  }
  for (const auto& [name, form] : binding) {
    const std::string& image = g.at(name).d_image;
    const Form df = exterior_derivative(form);
    const bool ok = image.empty() ? df.is_zero() : df == binding.at(image);
    if (!ok) throw InputError("binding for '" + name + "' is not compatible with d");
  }
  auto require = [&](const Monomial& m) {
    for (const auto& x : m)
      if (!binding.count(x)) throw InputError("generator '" + x + "' is unbound");
  };

  std::optional<PathForm> sum;
  for (const auto& [key, c] : e.terms()) {
    require(key.left);
    require(key.right);
    for (const auto& w : key.word) require(w);
    const int deg = degree(g, key);
    if (degree_hint && *degree_hint != deg) throw InputError("bar element term has degree " + std::to_string(deg));
    degree_hint = deg;
    std::vector<Form> forms;
    for (const auto& w : key.word) forms.push_back(realize_monomial(binding, w, n));
    PathForm term = iterated_integral(forms, std::vector<double>(forms.size(), 0.0), 1.0, q);
    if (e.variant() == BarVariant::Hochschild && (!key.left.empty() || !key.right.empty()))
      term = wedge(wedge(pullback_at(realize_monomial(binding, key.left, n), 0.0), term),
                   pullback_at(realize_monomial(binding, key.right, n), 1.0));
    const PathForm scaled = c.get_d() * term;
    sum = sum ? *sum + scaled : scaled;
  }
  if (sum) return *sum;
  return PathForm(degree_hint.value_or(0), Provenance::Constant, [](const Path&, Variations) { return 0.0; });
}

Dga random_dga(Rng& rng, int max_degree) {
  Dga g;
  const int count = rng.integer(3, 5);
  for (int i = 0; i < count; ++i) {
    const std::string name(1, static_cast<char>('a' + i));
    const int deg = rng.integer(i == 0 ? 1 : 0, max_degree);
    std::string image;
    switch (deg == max_degree ? 0 : rng.integer(0, 2)) {
      case 0: break;
      case 1: image = "fresh"; break;
      default:
        for (const auto& [other, gen] : g.generators())
          if (gen.degree == deg + 1 && gen.d_image.empty()) image = other;
        if (image.empty()) image = "fresh";
    }
    g.add(name, deg, image);
  }
  return g;
}

namespace {

Monomial random_monomial(Rng& rng, const Dga& g, bool positive) {
  std::vector<std::string> names;
  for (const auto& [name, gen] : g.generators()) names.push_back(name);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Monomial m;
    const int len = rng.integer(positive ? 1 : 0, 2);
    for (int i = 0; i < len; ++i) m.push_back(names[rng.integer(0, static_cast<int>(names.size()) - 1)]);
    Monomial sorted = m;
    if (normalize(g, sorted) == 0) continue;
    if (positive && degree(g, m) < 1) continue;
    return m;
  }
  for (const auto& name : names)
    if (g.degree(name) >= 1) return {name};
  throw std::invalid_argument("algebra has no generator of positive degree");
}

}  // namespace

BarElement random_bar_element(Rng& rng, const Dga& g, BarVariant v, int max_k) {
  BarElement e(v);
  const int terms = rng.integer(1, 3);
  for (int t = 0; t < terms; ++t) {
    const int k = rng.integer(1, max_k);
    std::vector<Monomial> word;
    for (int i = 0; i < k; ++i) word.push_back(random_monomial(rng, g, true));
    Monomial left, right;
    if (v == BarVariant::Hochschild) {
      left = random_monomial(rng, g, false);
      right = random_monomial(rng, g, false);
    }
    Rational c = random_rational(rng);
    if (c == 0) c = 1;
    e.add(g, std::move(left), std::move(word), std::move(right), c);
  }
  return e;
}

}  // namespace chen

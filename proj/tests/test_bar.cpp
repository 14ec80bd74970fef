#include "chen/bar.hpp"
#include "chen/formdsl.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace chen;

namespace {

Dga two(int pa, int pb) {
  Dga g;
  g.add("a", pa, "fresh");
  g.add("b", pb, "fresh");
  return g;
}

std::set<std::string> texts(const BarElement& e) {
  const auto v = format_terms(e);
  return {v.begin(), v.end()};
}

DgaElement gen(const char* name) { return DgaElement::generator(name); }

}  // namespace

TEST(Dga, KoszulSigns) {
  Dga g;
  g.add("a", 1);
  g.add("b", 1);
  g.add("c", 2);
  EXPECT_TRUE(wedge(g, gen("a"), gen("a")).is_zero());
  EXPECT_EQ(wedge(g, gen("a"), gen("b")), Rational(-1) * wedge(g, gen("b"), gen("a")));
  EXPECT_EQ(wedge(g, gen("c"), gen("b")), wedge(g, gen("b"), gen("c")));
  EXPECT_FALSE(wedge(g, gen("c"), gen("c")).is_zero());
  EXPECT_EQ(to_string(wedge(g, gen("b"), gen("a"))), "-a∧b");
}

TEST(Dga, Differential) {
  Dga g;
  g.add("h", 2);
  g.add("g", 1, "h");
  g.add("k", 1);
  EXPECT_EQ(d(g, gen("g")), gen("h"));
  EXPECT_TRUE(d(g, wedge(g, gen("k"), gen("h"))).is_zero());
  Dga r = two(1, 2);
  r.add("c", 3, "fresh");
  const DgaElement x = wedge(r, wedge(r, gen("a"), gen("b")), gen("c"));
  EXPECT_FALSE(d(r, x).is_zero());
  EXPECT_TRUE(d(r, d(r, x)).is_zero());
}

TEST(Dga, RandomAlgebraLaws) {
  for (int i = 0; i < 200; ++i) {
    Rng rng(41, {static_cast<std::uint64_t>(i)});
    const Dga g = random_dga(rng);
    std::vector<DgaElement> pick;
    for (const auto& [name, gen_] : g.generators()) pick.push_back(DgaElement::generator(name));
    const DgaElement x = pick[rng.integer(0, static_cast<int>(pick.size()) - 1)];
    const DgaElement y = wedge(g, pick[rng.integer(0, static_cast<int>(pick.size()) - 1)], pick[0]);
    const DgaElement z = pick[rng.integer(0, static_cast<int>(pick.size()) - 1)];
    EXPECT_EQ(wedge(g, wedge(g, x, y), z), wedge(g, x, wedge(g, y, z)));
    EXPECT_TRUE(d(g, d(g, wedge(g, x, y))).is_zero());
    const int px = degree(g, x.terms().begin()->first);
    const DgaElement leibniz = wedge(g, d(g, x), y) + Rational(px % 2 ? -1 : 1) * wedge(g, x, d(g, y));
    EXPECT_EQ(d(g, wedge(g, x, y)), leibniz);
  }
}

TEST(Dga, Declarations) {
  Dga g;
  g.add("b", 2);
  EXPECT_THROW(g.add("b", 1), InputError);
  EXPECT_THROW(g.add("a", 2, "b"), InputError);
  EXPECT_THROW(g.add("a", 1, "zz"), InputError);
  g.add("c", 1, "fresh");
  EXPECT_EQ(g.degree("dc"), 2);
  EXPECT_THROW(g.add("e", 0, "c"), InputError);
  const Dga j = Dga::from_json(R"([{"name":"a","degree":2,"d":"fresh"},{"name":"x","degree":2,"d":"da"},{"name":"y","degree":1,"d":0}])");
  EXPECT_EQ(j.at("x").d_image, "da");
  EXPECT_EQ(j.at("y").d_image, "");
  EXPECT_THROW(Dga::from_json("[{\"name\":\"a\"}]"), InputError);
  EXPECT_THROW(Dga::from_json("[{\"name\":\"a\",\"degree\":1,"), ParseError);
}

TEST(BarDifferential, BasedExamples) {
  for (int p = 1; p <= 3; ++p) {
    const Dga g = two(p, 1);
    const BarElement e = parse_bar_word("a", g, BarVariant::Based);
    EXPECT_EQ(texts(bar_differential(g, e)), std::set<std::string>{"-[da]"});
  }
  const Dga g = two(1, 1);
  EXPECT_EQ(texts(bar_differential(g, parse_bar_word("a|b", g, BarVariant::Based))),
            (std::set<std::string>{"-[da|b]", "-[a|db]", "-[a∧b]"}));
  const Dga h = two(2, 1);
  EXPECT_EQ(texts(bar_differential(h, parse_bar_word("a|b", h, BarVariant::Based))),
            (std::set<std::string>{"-[da|b]", "[a|db]", "[a∧b]"}));
}

TEST(BarDifferential, HochschildEmptyWordIsLeibniz) {
  for (int p0 = 0; p0 <= 2; ++p0) {
    Dga g;
    g.add("x", p0, "fresh");
    g.add("y", 1, "fresh");
    const BarElement e = parse_bar_word("L:x|R:y", g, BarVariant::Hochschild);
    const std::string sign = p0 % 2 ? "-" : "";
    EXPECT_EQ(texts(bar_differential(g, e)), (std::set<std::string>{"dx·[]·y", sign + "x·[]·dy"}));
  }
}

TEST(BarDifferential, HochschildBoundaryAbsorption) {
  Dga g;
  g.add("x", 1);
  g.add("a", 1);
  g.add("y", 0);
  const BarElement e = parse_bar_word("L:x|a|R:y", g, BarVariant::Hochschild);
  EXPECT_EQ(texts(bar_differential(g, e)), (std::set<std::string>{"-a∧x·[]·y", "-x·[]·a∧y"}));
}

TEST(BarDifferential, DegreeAndLength) {
  for (int v = 0; v < 2; ++v)
    for (int i = 0; i < 100; ++i) {
      Rng rng(43, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(v)});
      const Dga g = random_dga(rng);
      const BarElement e = random_bar_element(rng, g, v ? BarVariant::Hochschild : BarVariant::Based);
      const BarElement de = bar_differential(g, e);
      size_t len = 0;
      std::set<int> degs;
      for (const auto& [k, c] : e.terms()) {
        len = std::max(len, k.word.size());
        degs.insert(degree(g, k));
      }
      for (const auto& [k, c] : de.terms()) {
        EXPECT_LE(k.word.size(), len);
        EXPECT_TRUE(degs.count(degree(g, k) - 1));
        if (!v) EXPECT_TRUE(k.left.empty() && k.right.empty());
      }
    }
}

TEST(CertifyDSquared, Examples) {
  const Dga g = two(1, 2);
  EXPECT_TRUE(certify_d_squared(g, parse_bar_word("a", g, BarVariant::Based)).is_zero());
  EXPECT_FALSE(bar_differential(g, parse_bar_word("a|b", g, BarVariant::Based)).is_zero());
  for (int pa = 1; pa <= 3; ++pa)
    for (int pb = 1; pb <= 3; ++pb) {
      const Dga h = two(pa, pb);
      EXPECT_TRUE(certify_d_squared(h, parse_bar_word("a|b", h, BarVariant::Based)).is_zero());
      EXPECT_TRUE(certify_d_squared(h, parse_bar_word("L:b*a|a|b|R:a", h, BarVariant::Hochschild)).is_zero());
    }
}

TEST(CertifyDSquared, RandomWords) {
  for (int v = 0; v < 2; ++v)
    for (int i = 0; i < 300; ++i) {
      Rng rng(44, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(v)});
      const Dga g = random_dga(rng);
      const BarElement e = random_bar_element(rng, g, v ? BarVariant::Hochschild : BarVariant::Based);
      EXPECT_TRUE(certify_d_squared(g, e).is_zero()) << format_terms(e)[0];
    }
}

TEST(ParseBarWord, Errors) {
  Dga g = two(1, 0);
  EXPECT_THROW(parse_bar_word("a|q", g, BarVariant::Based), ParseError);
  EXPECT_THROW(parse_bar_word("L:a|a", g, BarVariant::Based), ParseError);
  EXPECT_THROW(parse_bar_word("a|L:a", g, BarVariant::Hochschild), ParseError);
  EXPECT_THROW(parse_bar_word("b", g, BarVariant::Based), ParseError);
  EXPECT_THROW(parse_bar_word("a||a", g, BarVariant::Based), ParseError);
  try {
    parse_bar_word("a | a*zz", g, BarVariant::Based);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 6u);
  }
  EXPECT_TRUE(parse_bar_word("a*a", g, BarVariant::Based).is_zero());
  EXPECT_EQ(format_terms(parse_bar_word("", g, BarVariant::Based)), std::vector<std::string>{"[]"});
  EXPECT_EQ(format_terms(parse_bar_word("b*a| da ", g, BarVariant::Based)), std::vector<std::string>{"[a∧b|da]"});
}

TEST(Realize, Examples) {
  Dga g;
  g.add("a", 1, "fresh");
  const Binding b{{"a", parse_form("dx1", 2)}};
  const double o[] = {0, 0}, one[] = {1, 1};
  const Path line = Path::line(o, one);
  EXPECT_NEAR(realize(g, parse_bar_word("a", g, BarVariant::Based), b)(line, {}), 1.0, 1e-9);
  EXPECT_EQ(realize(g, parse_bar_word("", g, BarVariant::Based), {})(line, {}), 1.0);
}

TEST(Realize, Errors) {
  Dga g;
  g.add("a", 1, "fresh");
  g.add("c", 1);
  const BarElement e = parse_bar_word("a|c", g, BarVariant::Based);
  EXPECT_THROW(realize(g, e, {{"a", parse_form("x2 dx1", 2)}}), InputError);
  EXPECT_THROW(realize(g, e, {{"a", parse_form("x2 dx1", 2)}, {"c", parse_form("x1", 2)}}), InputError);
  EXPECT_THROW(realize(g, e, {{"a", parse_form("x2 dx1", 2)}, {"c", parse_form("x1 dx2", 2)}}), InputError);
  EXPECT_NO_THROW(realize(g, e, {{"a", parse_form("x2 dx1", 2)}, {"c", parse_form("dx2", 2)}}));
  EXPECT_THROW(realize(g, e,
                       {{"a", parse_form("x2 dx1", 2)}, {"da", parse_form("dx1^dx2", 2)}, {"c", parse_form("dx2", 2)}}),
               InputError);
}

TEST(Realize, DifferentialCommutesOnBasedPaths) {
  Dga g;
  g.add("a", 1, "fresh");
  g.add("b", 2, "fresh");
  const Binding bind{{"a", parse_form("x2*x3 dx1", 3)}, {"b", parse_form("x1 dx2^dx3", 3)}};
  const BarElement e = parse_bar_word("a|b", g, BarVariant::Based);
  const PathForm lhs = realize(g, bar_differential(g, e), bind);
  const PathForm rhs = pathform_d(realize(g, e, bind));
  BasedConstraint c{std::vector<double>{0, 0, 0}, std::vector<double>{1, -1, 0.5}};
  const Path p = c.pin(Path::analytic(parse_coordinates("sin(2*t), t^2, t^3 - t")));
  std::vector<Variation> vs;
  for (const char* v : {"t^2 - t, 0, sin(3*t)", "0, t - t^2, t^3 - t"})
    vs.push_back(c.pin(Variation(Curve::analytic(parse_coordinates(v)))));
  EXPECT_NEAR(lhs(p, vs), rhs(p, vs), 1e-5);
}

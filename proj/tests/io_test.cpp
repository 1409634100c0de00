#include <catch_amalgamated.hpp>

#include <sstream>

#include "antitree/antitree.hpp"
#include "antitree/io.hpp"

using namespace antitree;

namespace {

template <typename F>
auto parse_text(const std::string& text, F parser) {
  std::istringstream in(text);
  return parser(in);
}

template <typename W, typename T>
std::string dump(W writer, const T& value) {
  std::ostringstream out;
  writer(out, value);
  return out.str();
}

}  // namespace

TEST_CASE("digraph round trip") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Digraph d = random_digraph(1 + static_cast<int>(seed % 9), 0.3, seed);
    const auto text = dump(write_digraph, d);
    CHECK(parse_text(text, parse_digraph) == d);
  }
  const auto d = parse_text("# comment\n\ndigraph 3\n0 1\n  # another\n1 2\n", parse_digraph);
  CHECK(d.size() == 2);
}

TEST_CASE("digraph parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_text(text, parse_digraph);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("digraph 3\n0 1\n0 5\n") == 3);
  CHECK(line_of("digraph 3\n\n0 x\n") == 3);
  CHECK(line_of("graph 3\n") == 1);
  CHECK(line_of("digraph 3\n1 1\n") == 2);
  CHECK(line_of("digraph 3\n0 1 2\n") == 2);
  CHECK_THROWS_AS(parse_text("", parse_digraph), ParseError);
}

TEST_CASE("tree round trip") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto t = random_oriented_tree(1 + static_cast<int>(seed % 12), seed);
    CHECK(parse_text(dump(write_tree, t), parse_tree) == t);
  }
  const auto t = parse_text("tree 4 0\n0 1 +\n1 2 -\n2 3 +\n", parse_tree);
  CHECK(t.root() == 0);
  CHECK(t.parent(2) == 1);
  CHECK(is_balanced_antidirected(t));
}

TEST_CASE("tree parse errors") {
  CHECK_THROWS_AS(parse_text("tree 3 0\n0 1 +\n", parse_tree), ParseError);
  CHECK_THROWS_AS(parse_text("tree 3 0\n0 1 +\n0 1 -\n", parse_tree), ParseError);
  CHECK_THROWS_AS(parse_text("tree 3 0\n0 1 +\n1 2 ?\n", parse_tree), ParseError);
  CHECK_THROWS_AS(parse_text("tree 3 5\n", parse_tree), ParseError);
  CHECK_THROWS_AS(parse_text("tree 3 0\n1 2 +\n2 1 +\n", parse_tree), ParseError);
}

TEST_CASE("reduced round trip") {
  const auto rd = parse_text("reduced 3 5\n0 1\n1 2\n2 0\nuprofile 0 3\nuprofile-in 2 5\n", parse_reduced);
  CHECK(rd.order() == 3);
  CHECK(rd.cluster_size == 5);
  CHECK(rd.apex_out == std::vector<int>{3, 0, 0});
  CHECK(rd.apex_in == std::vector<int>{0, 0, 5});
  CHECK(parse_text(dump(write_reduced, rd), parse_reduced) == rd);
  CHECK_THROWS_AS(parse_text("reduced 2 4\nuprofile 0 5\n", parse_reduced), ParseError);
  CHECK_THROWS_AS(parse_text("reduced 2 4\nuprofile 2 1\n", parse_reduced), ParseError);
  CHECK_THROWS_AS(parse_text("reduced 2 0\n", parse_reduced), ParseError);
}

TEST_CASE("fnv digest") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("abc") != fnv1a_hex("acb"));
}

TEST_CASE("missing file") { CHECK_THROWS_AS(parse_file("/nonexistent/x.txt", parse_digraph), std::ios_base::failure); }

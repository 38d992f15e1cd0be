#include "hanoi/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hanoi {

using nlohmann::json;

namespace {

json cycles_json(const Permutation &p) {
  json out = json::array();
  for (const auto &c : p.cycles())
    out.push_back(c);
  return out;
}

std::vector<Cycle> cycles_from(const json &j) {
  std::vector<Cycle> cycles;
  for (const auto &c : j)
    cycles.push_back(c.get<Cycle>());
  return cycles;
}

int degree_from(const json &j) {
  const int k = j.at("k").get<int>();
  if (k < 2 || k > 64)
    throw std::invalid_argument("alphabet size must be in [2, 64]");
  return k;
}

} // namespace

json automorphism_to_json(const TreeAutomorphism &g) {
  json states = json::array();
  for (const auto &s : g.states())
    states.push_back({{"perm", cycles_json(s.perm)}, {"next", s.next}});
  return {{"k", g.degree()}, {"initial", 0}, {"states", states}};
}

TreeAutomorphism automorphism_from_json(const json &j) {
  const int k = degree_from(j);
  std::vector<State> states;
  for (const auto &s : j.at("states")) {
    State st{Permutation::from_cycles(k, cycles_from(s.at("perm"))), s.at("next").get<std::vector<int>>()};
    states.push_back(std::move(st));
  }
  return TreeAutomorphism::from_states(k, std::move(states), j.value("initial", 0));
}

json group_to_json(const GeneratorSet &s) {
  json gens = json::array();
  for (const auto &m : s.non_identity())
    gens.push_back({{"name", m.name},
                    {"cycles", cycles_json(m.gen.perm())},
                    {"inactive", m.gen.inactive().letters()}});
  return {{"k", s.degree()}, {"generators", gens}};
}

GeneratorSet group_from_json(const json &j) {
  const int k = degree_from(j);
  GeneratorSet s(k);
  for (const auto &g : j.at("generators")) {
    auto gen = HanoiGenerator::make(k, g.value("inactive", std::vector<Letter>{}),
                                    cycles_from(g.at("cycles")));
    std::string name = g.contains("name") ? g.at("name").get<std::string>() : gen.label();
    if (gen.is_identity())
      continue;
    s.add(std::move(name), gen);
  }
  return s;
}

json nucleus_to_json(const Nucleus &n) {
  json elements = json::array();
  for (std::size_t i = 0; i < n.size(); ++i)
    elements.push_back({{"name", n.name_of(i)},
                        {"word", n.words[i]},
                        {"machine", automorphism_to_json(n.elements[i])}});
  return {{"k", n.k}, {"elements", elements}};
}

Nucleus nucleus_from_json(const json &j) {
  Nucleus n;
  n.k = degree_from(j);
  std::vector<std::pair<TreeAutomorphism, std::vector<std::string>>> all;
  for (const auto &e : j.at("elements"))
    all.emplace_back(automorphism_from_json(e.at("machine")),
                     e.value("word", std::vector<std::string>{}));
  std::sort(all.begin(), all.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
  for (auto &[g, w] : all) {
    if (g.degree() != n.k)
      throw std::invalid_argument("nucleus element over the wrong alphabet");
    if (!n.elements.empty() && n.elements.back() == g)
      continue;
    n.elements.push_back(std::move(g));
    n.words.push_back(std::move(w));
  }
  return n;
}

GeneratorSet resolve_group(std::string_view text) {
  auto first = text.find_first_not_of(" \t\n");
  if (first != std::string_view::npos && text[first] == '{')
    return group_from_json(json::parse(text));
  return family_by_name(text);
}

GeneratorSet load_group_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open group file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return group_from_json(json::parse(buffer.str()));
}

} // namespace hanoi

#include "mbg/transcript.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace mbg {

using ojson = nlohmann::ordered_json;

const char* goal_code(Goal g) {
  switch (g) {
    case Goal::PerfectMatching: return "PM";
    case Goal::HamiltonCycle: return "HC";
    case Goal::Connectivity: return "CONN";
    case Goal::MinDegree: return "DEG";
  }
  return "?";
}

Goal parse_goal(const std::string& code) {
  if (code == "PM") return Goal::PerfectMatching;
  if (code == "HC") return Goal::HamiltonCycle;
  if (code == "CONN") return Goal::Connectivity;
  if (code == "DEG") return Goal::MinDegree;
  throw GameError(ErrorKind::ConfigError, "unknown goal '" + code + "'");
}

namespace {

ojson edges_json(const std::vector<Edge>& edges) {
  ojson arr = ojson::array();
  for (const Edge& e : edges) arr.push_back({e.u, e.v});
  return arr;
}

std::vector<Edge> parse_edges(const ojson& arr) {
  std::vector<Edge> out;
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2) throw std::runtime_error("edge must be [u,v]");
    out.push_back(Edge::of(pair[0].get<Vertex>(), pair[1].get<Vertex>()));
  }
  return out;
}

[[noreturn]] void corrupt(std::size_t line, const std::string& why) {
  throw GameError(ErrorKind::CorruptTranscript,
                  "transcript line " + std::to_string(line) + ": " + why);
}

}  // namespace

void Transcript::write(std::ostream& out) const {
  ojson h;
  h["n"] = header.n;
  h["b"] = header.b;
  h["maker"] = header.maker;
  h["breaker"] = header.breaker;
  h["goal"] = goal_code(header.goal);
  if (header.goal == Goal::MinDegree) h["c"] = header.target_degree;
  h["seed"] = header.seed;
  h["config_hash"] = header.config_hash;
  h["preclaimed"] = edges_json(header.preclaimed);
  out << h.dump() << '\n';
  for (const MoveRecord& r : records) {
    ojson j;
    j["i"] = r.index;
    j["p"] = to_string(r.player);
    j["e"] = edges_json(r.edges);
    ojson a = ojson::object();
    for (const auto& [k, v] : r.annotations) a[k] = v;
    j["a"] = std::move(a);
    out << j.dump() << '\n';
  }
}

std::string Transcript::to_jsonl() const {
  std::ostringstream ss;
  write(ss);
  return ss.str();
}

Transcript Transcript::read(std::istream& in) {
  Transcript t;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ojson j;
    try {
      j = ojson::parse(line);
    } catch (const std::exception& e) {
      corrupt(lineno, std::string("invalid JSON: ") + e.what());
    }
    try {
      if (!have_header) {
        if (!j.contains("n")) corrupt(lineno, "missing header");
        auto& h = t.header;
        h.n = j.at("n").get<Vertex>();
        h.b = j.at("b").get<std::uint32_t>();
        h.maker = j.value("maker", "");
        h.breaker = j.value("breaker", "");
        h.goal = parse_goal(j.at("goal").get<std::string>());
        h.target_degree = j.value("c", 0U);
        h.seed = j.value("seed", std::uint64_t{0});
        h.config_hash = j.value("config_hash", "");
        if (j.contains("preclaimed")) h.preclaimed = parse_edges(j["preclaimed"]);
        have_header = true;
        continue;
      }
      MoveRecord r;
      r.index = j.at("i").get<std::uint64_t>();
      const auto p = j.at("p").get<std::string>();
      if (p == "M") {
        r.player = Player::Maker;
      } else if (p == "B") {
        r.player = Player::Breaker;
      } else {
        corrupt(lineno, "unknown player '" + p + "'");
      }
      r.edges = parse_edges(j.at("e"));
      if (j.contains("a"))
        for (const auto& [k, v] : j["a"].items()) r.annotations[k] = v.get<double>();
      t.records.push_back(std::move(r));
    } catch (const GameError&) {
      throw;
    } catch (const std::exception& e) {
      corrupt(lineno, e.what());
    }
  }
  if (!have_header) corrupt(lineno, "empty transcript");
  return t;
}

Transcript Transcript::from_jsonl(const std::string& text) {
  std::istringstream ss(text);
  return read(ss);
}

GameState Transcript::initial_state() const {
  GameState s(header.n, header.b);
  s.preclaim_breaker(header.preclaimed);
  return s;
}

GameState Transcript::replay() const {
  GameState s = [&] {
    try {
      return initial_state();
    } catch (const GameError& e) {
      corrupt(1, e.what());
    }
  }();
  for (std::size_t k = 0; k < records.size(); ++k) {
    const MoveRecord& r = records[k];
    const std::size_t lineno = k + 2;
    try {
      if (r.player == Player::Breaker && r.edges.empty() && s.breaker_quota() > 0 &&
          s.turn() == Player::Breaker) {
        s.pass_breaker();
      } else {
        s.claim(r.player, r.edges);
      }
    } catch (const GameError& e) {
      corrupt(lineno, e.what());
    }
  }
  return s;
}

std::string config_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mbg

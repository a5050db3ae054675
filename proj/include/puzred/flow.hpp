#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "puzred/common.hpp"
#include "puzred/cover_enum.hpp"
#include "puzred/grid_graph.hpp"

namespace puzred {

enum class SourceType : std::uint8_t { Unconstrained, Biased, Exclusive, Fixed };
enum class SinkClass : std::uint8_t {
  TShaped,
  LUnconstrained,
  LExclusive,
  LBiased,
  Blank,
};

struct FlowSink {
  Pt pos;
  int demand = 0;
};

// A source sits on one unit segment and pushes its supply of 2 to the two
// endpoint sinks. `sink_a` is the first outgoing edge: biased sources must
// send at least 1 unit toward it, so orientation survives re-serialization.
struct FlowSource {
  Pt pos;  // base lattice point of the host segment
  bool horizontal = true;
  SourceType type = SourceType::Fixed;
  int sink_a = -1;
  int sink_b = -1;
  int edge = -1;  // instance edge of the host segment, -1 for empty
};

struct FlowNetwork {
  int width = 0, height = 0;
  std::vector<FlowSink> sinks;
  std::vector<FlowSource> sources;
  GridGraph grid;  // provenance, used by the cover maps

  int sink_id(Pt p) const { return p.y * (width + 1) + p.x; }
};

// Per-source pairs (toward sink_a, toward sink_b), indexed like sources.
struct Flow {
  std::vector<std::array<int, 2>> send;
  friend bool operator==(const Flow&, const Flow&) = default;
  friend auto operator<=>(const Flow&, const Flow&) = default;
};

enum class FlowMode { Exact, AtLeast, AtMost };

struct FlowLimits {
  std::size_t max_flows = std::size_t{1} << 20;
  std::uint64_t max_steps = 200'000'000;
};

namespace detail {

inline const std::vector<std::array<int, 2>>& source_choices(SourceType t) {
  static const std::vector<std::array<int, 2>> unconstrained{{0, 2}, {1, 1}, {2, 0}};
  static const std::vector<std::array<int, 2>> biased{{1, 1}, {2, 0}};
  static const std::vector<std::array<int, 2>> exclusive{{0, 2}, {2, 0}};
  static const std::vector<std::array<int, 2>> fixed{{1, 1}};
  switch (t) {
    case SourceType::Unconstrained: return unconstrained;
    case SourceType::Biased: return biased;
    case SourceType::Exclusive: return exclusive;
    case SourceType::Fixed: return fixed;
  }
  throw StructuralError("unknown source type");
}

inline char source_char(SourceType t) {
  switch (t) {
    case SourceType::Unconstrained: return 'u';
    case SourceType::Biased: return 'b';
    case SourceType::Exclusive: return 'x';
    case SourceType::Fixed: return 'f';
  }
  throw StructuralError("unknown source type");
}

}  // namespace detail

inline FlowNetwork build_network(const GridGraph& h) {
  FlowNetwork n;
  n.width = h.width;
  n.height = h.height;
  n.grid = h;
  for (int y = 0; y <= h.height; ++y)
    for (int x = 0; x <= h.width; ++x)
      n.sinks.push_back({{x, y}, h.point_degree(x, y)});

  auto add_source = [&](Pt base, bool horizontal, const GridSegment& seg) {
    Pt far = horizontal ? Pt{base.x + 1, base.y} : Pt{base.x, base.y + 1};
    FlowSource s;
    s.pos = base;
    s.horizontal = horizontal;
    s.edge = seg.edge;
    switch (seg.status) {
      case SegStatus::Empty: s.type = SourceType::Fixed; break;
      case SegStatus::Undirected: s.type = SourceType::Unconstrained; break;
      case SegStatus::Required: s.type = SourceType::Exclusive; break;
      case SegStatus::Directed: s.type = SourceType::Biased; break;
    }
    // Biased sources point their first edge at the sink the traversal enters,
    // so admissible pairs exclude the against-the-arrow assignment.
    bool a_is_far = s.type == SourceType::Biased && !seg.reversed;
    s.sink_a = n.sink_id(a_is_far ? far : base);
    s.sink_b = n.sink_id(a_is_far ? base : far);
    n.sources.push_back(s);
  };
  for (int y = 0; y <= h.height; ++y)
    for (int x = 0; x < h.width; ++x) add_source({x, y}, true, h.horizontal(x, y));
  for (int y = 0; y < h.height; ++y)
    for (int x = 0; x <= h.width; ++x) add_source({x, y}, false, h.vertical(x, y));

  long long supply = 2LL * static_cast<long long>(n.sources.size()), demand = 0;
  for (const FlowSink& s : n.sinks) demand += s.demand;
  if (supply != demand) throw StructuralError("network supply does not match demand");
  return n;
}

// All admissible flows under the chosen conservation reading at the sinks
// (exact demand, at least demand, or at most demand), in lexicographic order
// of the per-source pairs. Because the total supply equals the total demand,
// a sink pushed above its demand dooms every completion in all three modes,
// which is what keeps the search narrow.
inline std::vector<Flow> enumerate_flows(const FlowNetwork& n, FlowMode mode = FlowMode::Exact,
                                         FlowLimits lim = {}) {
  std::vector<std::array<int, 2>> send(n.sources.size(), {1, 1});
  std::vector<int> received(n.sinks.size(), 0);
  std::vector<int> undecided(n.sinks.size(), 0);
  std::vector<std::size_t> order;  // non-fixed sources, decided band by band
  for (std::size_t i = 0; i < n.sources.size(); ++i) {
    const FlowSource& s = n.sources[i];
    if (s.type == SourceType::Fixed) {
      received[s.sink_a] += 1;
      received[s.sink_b] += 1;
    } else {
      order.push_back(i);
      undecided[s.sink_a] += 1;
      undecided[s.sink_b] += 1;
    }
  }
  // Most-constrained-first decision order: a source whose sink is one step
  // from closing comes next, so each corridor is walked serially and wrong
  // values die at the very next sink instead of multiplying across regions.
  {
    std::vector<int> und = undecided, live = undecided;
    std::vector<char> done(n.sources.size(), 0);
    std::vector<std::size_t> walk;
    walk.reserve(order.size());
    auto score = [&](std::size_t i) {
      const FlowSource& s = n.sources[i];
      int best = INT32_MAX;
      for (int k : {s.sink_a, s.sink_b})
        best = std::min(best, und[k] * 16 - (live[k] - und[k]));
      return best;
    };
    for (std::size_t round = 0; round < order.size(); ++round) {
      std::size_t pick = order.size();
      int pick_score = INT32_MAX;
      for (std::size_t i : order) {
        if (done[i]) continue;
        int sc = score(i);
        if (sc < pick_score) {
          pick_score = sc;
          pick = i;
        }
      }
      done[pick] = 1;
      und[n.sources[pick].sink_a] -= 1;
      und[n.sources[pick].sink_b] -= 1;
      walk.push_back(pick);
    }
    order = walk;
  }
  long long under_total = 0;
  for (std::size_t k = 0; k < n.sinks.size(); ++k) {
    if (received[k] > n.sinks[k].demand)
      throw StructuralError("fixed sources alone exceed a sink demand");
    under_total += n.sinks[k].demand - received[k];
  }

  std::vector<Flow> out;
  std::uint64_t steps = 0;
  std::size_t open_sources = order.size();

  auto closing_ok = [&](int sink) {
    int d = n.sinks[sink].demand, r = received[sink];
    switch (mode) {
      case FlowMode::Exact: return r == d;
      case FlowMode::AtLeast: return r >= d;
      case FlowMode::AtMost: return r <= d;
    }
    return false;
  };

  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == order.size()) {
      if (out.size() >= lim.max_flows) throw CapError("flow enumeration exceeded the flow cap");
      out.push_back({send});
      return;
    }
    const FlowSource& s = n.sources[order[depth]];
    for (std::array<int, 2> pair : detail::source_choices(s.type)) {
      if (++steps > lim.max_steps) throw CapError("flow enumeration exceeded the step cap");
      bool ok = true;
      int applied = 0;
      int sk[2] = {s.sink_a, s.sink_b};
      for (int j = 0; j < 2 && ok; ++j) {
        int d = n.sinks[sk[j]].demand;
        under_total -= std::max(0, d - received[sk[j]]);
        received[sk[j]] += pair[j];
        undecided[sk[j]] -= 1;
        under_total += std::max(0, d - received[sk[j]]);
        applied += 1;
        if (received[sk[j]] > d) ok = false;  // total balance kills any overfull sink
        if (undecided[sk[j]] == 0) {
          if (!closing_ok(sk[j])) ok = false;
          // pairs always sum to 2 and supply equals demand, so a sink that
          // closes off its demand can never be balanced out elsewhere
          if (received[sk[j]] != d) ok = false;
        }
      }
      open_sources -= 1;
      if (ok && under_total <= 2LL * static_cast<long long>(open_sources)) {
        send[order[depth]] = pair;
        self(self, depth + 1);
        send[order[depth]] = {1, 1};
      }
      open_sources += 1;
      for (int j = applied - 1; j >= 0; --j) {
        int d = n.sinks[sk[j]].demand;
        under_total -= std::max(0, d - received[sk[j]]);
        received[sk[j]] -= pair[j];
        undecided[sk[j]] += 1;
        under_total += std::max(0, d - received[sk[j]]);
      }
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

inline Flow cover_to_flow(const CoverAssignment& c, const FlowNetwork& n) {
  if (c.state.size() != n.grid.graph.edges.size())
    throw StructuralError("cover does not match the network's instance");
  Flow f;
  f.send.assign(n.sources.size(), {1, 1});
  for (std::size_t i = 0; i < n.sources.size(); ++i) {
    const FlowSource& s = n.sources[i];
    if (s.edge < 0) continue;
    EdgeState st = c.state[static_cast<std::size_t>(s.edge)];
    if (st == EdgeState::Unused) continue;
    const GridSegment& seg =
        s.horizontal ? n.grid.horizontal(s.pos.x, s.pos.y) : n.grid.vertical(s.pos.x, s.pos.y);
    // Traversal along the stored path enters the far endpoint of a plain
    // segment and the base endpoint of a reversed one.
    bool enters_far = (st == EdgeState::Forward) != seg.reversed;
    Pt far = s.horizontal ? Pt{s.pos.x + 1, s.pos.y} : Pt{s.pos.x, s.pos.y + 1};
    int entered = n.sink_id(enters_far ? far : s.pos);
    f.send[i] = entered == s.sink_a ? std::array<int, 2>{2, 0} : std::array<int, 2>{0, 2};
  }
  return f;
}

inline CoverAssignment flow_to_cover(const Flow& f, const FlowNetwork& n) {
  if (f.send.size() != n.sources.size())
    throw StructuralError("flow does not match the network");
  CoverAssignment c;
  c.state.assign(n.grid.graph.edges.size(), EdgeState::Unused);
  std::vector<bool> seen(c.state.size(), false);
  for (std::size_t i = 0; i < n.sources.size(); ++i) {
    const FlowSource& s = n.sources[i];
    if (s.edge < 0) continue;
    std::array<int, 2> pr = f.send[i];
    EdgeState st;
    if (pr == std::array<int, 2>{1, 1}) {
      st = EdgeState::Unused;
    } else if (pr[0] + pr[1] == 2 && (pr[0] == 0 || pr[1] == 0)) {
      const GridSegment& seg =
          s.horizontal ? n.grid.horizontal(s.pos.x, s.pos.y) : n.grid.vertical(s.pos.x, s.pos.y);
      Pt far = s.horizontal ? Pt{s.pos.x + 1, s.pos.y} : Pt{s.pos.x, s.pos.y + 1};
      int entered = pr[0] == 2 ? s.sink_a : s.sink_b;
      bool entered_far = entered == n.sink_id(far);
      st = (entered_far != seg.reversed) ? EdgeState::Forward : EdgeState::Backward;
    } else {
      throw StructuralError("flow pair is not admissible for a drawn segment");
    }
    std::size_t e = static_cast<std::size_t>(s.edge);
    if (seen[e] && c.state[e] != st)
      throw StructuralError("flow orients one edge inconsistently");
    seen[e] = true;
    c.state[e] = st;
  }
  return c;
}

// Sink taxonomy of the refined drawings: junction sinks pair one exclusive
// source with two perpendicular pass-through sources, interior bend sinks
// carry a perpendicular same-type pair, and everything else is blank.
inline std::map<int, SinkClass> classify_sinks(const FlowNetwork& n) {
  // slot order: 0 east, 1 north, 2 west, 3 south
  std::vector<std::array<int, 4>> slot(n.sinks.size(), std::array<int, 4>{-1, -1, -1, -1});
  for (std::size_t i = 0; i < n.sources.size(); ++i) {
    const FlowSource& s = n.sources[i];
    Pt far = s.horizontal ? Pt{s.pos.x + 1, s.pos.y} : Pt{s.pos.x, s.pos.y + 1};
    slot[n.sink_id(s.pos)][s.horizontal ? 0 : 1] = static_cast<int>(i);
    slot[n.sink_id(far)][s.horizontal ? 2 : 3] = static_cast<int>(i);
  }
  std::map<int, SinkClass> out;
  for (std::size_t k = 0; k < n.sinks.size(); ++k) {
    std::vector<int> live;  // directions holding a non-fixed source
    for (int d = 0; d < 4; ++d) {
      int si = slot[k][d];
      if (si >= 0 && n.sources[si].type != SourceType::Fixed) live.push_back(d);
    }
    auto fail = [&](const char* why) {
      throw UnclassifiableError("sink at " + detail::pt_str(n.sinks[k].pos) + ": " + why);
    };
    if (live.empty()) {
      out[static_cast<int>(k)] = SinkClass::Blank;
      continue;
    }
    auto type_of = [&](int d) { return n.sources[slot[k][d]].type; };
    if (live.size() == 3) {
      int excl = -1;
      for (int d : live)
        if (type_of(d) == SourceType::Exclusive) excl = excl < 0 ? d : -2;
      if (excl < 0) fail("junction needs exactly one exclusive source");
      for (int d : live)
        if (d != excl && (d % 2) == (excl % 2))
          fail("a pass-through source is collinear with the exclusive one");
      out[static_cast<int>(k)] = SinkClass::TShaped;
      continue;
    }
    if (live.size() != 2) fail("non-fixed source count is not 0, 2, or 3");
    if ((live[0] % 2) == (live[1] % 2)) fail("two collinear non-fixed sources");
    SourceType a = type_of(live[0]), b = type_of(live[1]);
    if (a != b) fail("perpendicular sources of different types");
    if (a == SourceType::Unconstrained) {
      out[static_cast<int>(k)] = SinkClass::LUnconstrained;
    } else if (a == SourceType::Exclusive) {
      out[static_cast<int>(k)] = SinkClass::LExclusive;
    } else {
      int inward = 0;
      for (int d : live)
        if (n.sources[slot[k][d]].sink_a == static_cast<int>(k)) inward += 1;
      if (inward != 1) fail("biased pair is not one-in one-out");
      out[static_cast<int>(k)] = SinkClass::LBiased;
    }
  }
  return out;
}

inline std::string serialize_network(const FlowNetwork& n) {
  std::ostringstream out;
  for (const FlowSink& s : n.sinks)
    out << "sink " << s.pos.x << " " << s.pos.y << " " << s.demand << "\n";
  for (const FlowSource& s : n.sources)
    out << "source " << s.pos.x << " " << s.pos.y << " " << detail::source_char(s.type) << " "
        << s.sink_a << " " << s.sink_b << "\n";
  return out.str();
}

// Rebuilds sinks and sources; grid provenance does not travel through text,
// so the result enumerates and classifies but cannot run the cover maps.
inline FlowNetwork parse_network(const std::string& text) {
  FlowNetwork n;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::map<Pt, int> sink_ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "sink") {
      FlowSink s;
      if (!(ls >> s.pos.x >> s.pos.y >> s.demand) || s.demand < 0)
        throw ParseError(line_no, "expected 'sink <x> <y> <demand>'");
      if (!sink_ids.emplace(s.pos, static_cast<int>(n.sinks.size())).second)
        throw ParseError(line_no, "duplicate sink");
      n.sinks.push_back(s);
    } else if (kind == "source") {
      FlowSource s;
      std::string ty;
      if (!(ls >> s.pos.x >> s.pos.y >> ty >> s.sink_a >> s.sink_b) || ty.size() != 1)
        throw ParseError(line_no, "expected 'source <x> <y> <type> <sink1> <sink2>'");
      switch (ty[0]) {
        case 'u': s.type = SourceType::Unconstrained; break;
        case 'b': s.type = SourceType::Biased; break;
        case 'x': s.type = SourceType::Exclusive; break;
        case 'f': s.type = SourceType::Fixed; break;
        default: throw ParseError(line_no, "unknown source type");
      }
      if (s.sink_a < 0 || s.sink_b < 0) throw ParseError(line_no, "negative sink id");
      n.sources.push_back(s);
    } else {
      throw ParseError(line_no, "unknown directive '" + kind + "'");
    }
  }
  for (FlowSource& s : n.sources) {
    if (s.sink_a >= static_cast<int>(n.sinks.size()) ||
        s.sink_b >= static_cast<int>(n.sinks.size()))
      throw ParseError(0, "source references a missing sink");
    Pt pa = n.sinks[s.sink_a].pos, pb = n.sinks[s.sink_b].pos;
    Pt lo = pa < pb ? pa : pb, hi = pa < pb ? pb : pa;
    if (!((hi.x == lo.x + 1 && hi.y == lo.y) || (hi.x == lo.x && hi.y == lo.y + 1)))
      throw ParseError(0, "source endpoints are not grid neighbors");
    s.pos = lo;
    s.horizontal = hi.x != lo.x;
  }
  for (const FlowSink& s : n.sinks) {
    n.width = std::max(n.width, s.pos.x);
    n.height = std::max(n.height, s.pos.y);
  }
  std::size_t expect = static_cast<std::size_t>(n.width + 1) * (n.height + 1);
  if (n.sinks.size() != expect)
    throw ParseError(0, "sink set does not fill the bounding lattice");
  for (std::size_t k = 0; k < n.sinks.size(); ++k)
    if (n.sink_id(n.sinks[k].pos) != static_cast<int>(k))
      throw ParseError(0, "sinks are not listed row-major from the origin");
  return n;
}

inline std::string serialize_flow(const Flow& f) {
  std::ostringstream out;
  for (std::size_t i = 0; i < f.send.size(); ++i)
    out << "f " << i << " " << f.send[i][0] << " " << f.send[i][1] << "\n";
  return out.str();
}

inline Flow parse_flow(const FlowNetwork& n, const std::string& text) {
  Flow f;
  f.send.assign(n.sources.size(), {1, 1});
  std::vector<bool> seen(n.sources.size(), false);
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kind;
    std::size_t id;
    int a, b;
    if (!(ls >> kind >> id >> a >> b) || kind != "f")
      throw ParseError(line_no, "expected 'f <sourceid> <a> <b>'");
    if (id >= n.sources.size()) throw ParseError(line_no, "source id out of range");
    if (seen[id]) throw ParseError(line_no, "duplicate source id");
    if (a < 0 || b < 0 || a + b != 2)
      throw ParseError(line_no, "flow pair must be nonnegative with sum 2");
    seen[id] = true;
    f.send[id] = {a, b};
  }
  for (std::size_t i = 0; i < n.sources.size(); ++i)
    if (!seen[i]) throw ParseError(0, "missing flow line for a source");
  return f;
}

}  // namespace puzred

#include "qpv/surface.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace qpv {

MarkedSurface MarkedSurface::disjoint_disks(int k) {
  MarkedSurface s;
  s.edges = k;
  s.edge_alive.assign(k, true);
  s.vert_of_half.assign(2 * k, -1);
  for (int d = 0; d < k; ++d) {
    Vertex plus, minus;
    plus.alive = minus.alive = true;
    plus.marked = minus.marked = true;
    plus.sign = 1;
    minus.sign = -1;
    plus.fan = {s.half_tail(d)};
    minus.fan = {s.half_head(d)};
    s.verts.push_back(plus);
    s.verts.push_back(minus);
    s.vert_of_half[s.half_tail(d)] = 2 * d;
    s.vert_of_half[s.half_head(d)] = 2 * d + 1;
    s.point_vertex.push_back(2 * d);
    s.point_vertex.push_back(2 * d + 1);
  }
  return s;
}

int MarkedSurface::point_id(const std::string& name) const {
  if (name.size() < 2) throw std::invalid_argument("bad point name: " + name);
  char c = name.back();
  if (c != '+' && c != '-') throw std::invalid_argument("bad point name: " + name);
  int disk;
  try {
    size_t used = 0;
    disk = std::stoi(name.substr(0, name.size() - 1), &used);
    if (used != name.size() - 1) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad point name: " + name);
  }
  if (disk < 0 || disk >= edges) throw std::invalid_argument("unknown disk in: " + name);
  return 2 * disk + (c == '-' ? 1 : 0);
}

int MarkedSurface::vertex_of_point(const std::string& name) const {
  int v = point_vertex[point_id(name)];
  if (v < 0 || !verts[v].alive) throw std::invalid_argument("point no longer present: " + name);
  return v;
}

int MarkedSurface::nextcc(int v, int h) const {
  const auto& fan = verts[v].fan;
  auto it = std::find(fan.begin(), fan.end(), h);
  if (it == fan.end()) throw std::logic_error("half-edge not at vertex");
  ++it;
  return it == fan.end() ? fan.front() : *it;
}

void MarkedSurface::corner_glue(const std::string& xn, const std::string& yn) {
  int x = vertex_of_point(xn), y = vertex_of_point(yn);
  if (x == y) throw std::invalid_argument("corner_glue: same point");
  if (verts[x].sign != verts[y].sign) throw std::invalid_argument("corner_glue: mixed signs");
  if (!verts[x].marked || !verts[y].marked)
    throw std::invalid_argument("corner_glue: point not marked");
  // splice the two anchored fans; for minus points the order is reversed
  std::vector<int> merged;
  if (verts[x].sign > 0) {
    merged = verts[x].fan;
    merged.insert(merged.end(), verts[y].fan.begin(), verts[y].fan.end());
  } else {
    merged = verts[y].fan;
    merged.insert(merged.end(), verts[x].fan.begin(), verts[x].fan.end());
  }
  for (int h : verts[y].fan) vert_of_half[h] = x;
  verts[x].fan = std::move(merged);
  verts[y] = Vertex{};
  for (auto& pv : point_vertex)
    if (pv == y) pv = x;
}

void MarkedSurface::forget_point(const std::string& xn) {
  int x = vertex_of_point(xn);
  if (!verts[x].marked) throw std::invalid_argument("forget_point: already unmarked");
  verts[x].marked = false;
  // the component of x must keep a marked vertex
  std::vector<int> stack{x};
  std::vector<bool> seen(verts.size(), false);
  seen[x] = true;
  bool found = false;
  while (!stack.empty() && !found) {
    int v = stack.back();
    stack.pop_back();
    if (verts[v].marked) found = true;
    for (int h : verts[v].fan) {
      int w = vert_of_half[twin(h)];
      if (w >= 0 && !seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  if (!found) {
    verts[x].marked = true;
    throw std::invalid_argument("forget_point: would orphan a component");
  }
}

int MarkedSurface::contract_unmarked(int x) {
  if (!verts[x].alive || verts[x].marked)
    throw std::invalid_argument("contract_unmarked: vertex must be alive and unmarked");
  int hx = -1;
  for (int h : verts[x].fan)
    if (vert_of_half[twin(h)] != x) {
      hx = h;
      break;
    }
  if (hx < 0) throw std::invalid_argument("contract_unmarked: only loops at vertex");
  int hy = twin(hx);
  int y = vert_of_half[hy];
  int e0 = edge_of(hx);

  // x's other ends, in cyclic order starting after hx
  std::vector<int> rest;
  {
    const auto& fan = verts[x].fan;
    auto it = std::find(fan.begin(), fan.end(), hx);
    size_t pos = static_cast<size_t>(it - fan.begin());
    for (size_t k = 1; k < fan.size(); ++k) rest.push_back(fan[(pos + k) % fan.size()]);
  }
  // splice in place of hy, preserving every other corner of y
  auto& yfan = verts[y].fan;
  auto ity = std::find(yfan.begin(), yfan.end(), hy);
  size_t posy = static_cast<size_t>(ity - yfan.begin());
  yfan.erase(ity);
  yfan.insert(yfan.begin() + posy, rest.begin(), rest.end());
  for (int h : rest) vert_of_half[h] = y;

  edge_alive[e0] = false;
  vert_of_half[hx] = vert_of_half[hy] = -1;
  verts[x] = Vertex{};
  for (auto& pv : point_vertex)
    if (pv == x) pv = -1;
  return e0;
}

int MarkedSurface::alive_edges() const {
  int n = 0;
  for (bool a : edge_alive)
    if (a) ++n;
  return n;
}

int MarkedSurface::alive_vertices() const {
  int n = 0;
  for (const auto& v : verts)
    if (v.alive) ++n;
  return n;
}

SurfaceAnalysis analyze(const MarkedSurface& s) {
  SurfaceAnalysis out;
  out.chi = s.chi();

  // boundary walks: arrival half-edge h at vert(h); leave along nextcc(h);
  // next arrival is its twin.  The marked corner of v is passed exactly when
  // h sits at the back of v's fan.
  int H = 2 * s.edges;
  std::vector<bool> seen(H, false);
  for (int h0 = 0; h0 < H; ++h0) {
    if (s.vert_of_half[h0] < 0 || seen[h0]) continue;
    BoundaryCircle circ;
    circ.uncut = true;
    int h = h0;
    do {
      seen[h] = true;
      circ.arrivals.push_back(h);
      int v = s.vert_of_half[h];
      if (s.verts[v].marked && s.verts[v].fan.back() == h) circ.uncut = false;
      h = s.twin(s.nextcc(v, h));
    } while (h != h0);
    out.circles.push_back(std::move(circ));
  }

  auto traversal = [&](int arrival) {
    // arriving at the head end means the edge was traversed tail -> head
    return std::pair<int, int>{s.edge_of(arrival), s.head_end(arrival) ? 1 : -1};
  };

  for (auto& circ : out.circles) {
    if (circ.uncut) {
      ++out.uncut_count;
      for (int h : circ.arrivals) circ.word.push_back(traversal(h));
      continue;
    }
    // rotate so the walk starts right after a cut
    int n = static_cast<int>(circ.arrivals.size());
    int start = -1;
    for (int i = 0; i < n; ++i) {
      int h = circ.arrivals[i];
      int v = s.vert_of_half[h];
      if (s.verts[v].marked && s.verts[v].fan.back() == h) start = (i + 1) % n;
    }
    Arc cur;
    cur.from_vertex = s.vert_of_half[circ.arrivals[(start + n - 1) % n]];
    for (int k = 0; k < n; ++k) {
      int h = circ.arrivals[(start + k) % n];
      int v = s.vert_of_half[h];
      cur.word.push_back(traversal(h));
      if (s.verts[v].marked && s.verts[v].fan.back() == h) {
        cur.to_vertex = v;
        out.arcs.push_back(cur);
        cur = Arc{};
        cur.from_vertex = v;
      }
    }
  }

  for (auto& a : out.arcs) {
    int sf = s.verts[a.from_vertex].sign, st = s.verts[a.to_vertex].sign;
    if (sf < 0 && st > 0)
      a.kind = ArcKind::left;
    else if (sf > 0 && st < 0)
      a.kind = ArcKind::right;
    else
      a.kind = ArcKind::neither;
    if (a.kind == ArcKind::left) ++out.n_left;
    if (a.kind == ArcKind::right) ++out.n_right;
    if (a.kind == ArcKind::neither) ++out.n_neither;
  }

  // components and genus
  int V = static_cast<int>(s.verts.size());
  std::vector<int> comp(V, -1);
  int ncomp = 0;
  for (int v0 = 0; v0 < V; ++v0) {
    if (!s.verts[v0].alive || comp[v0] >= 0) continue;
    std::vector<int> stack{v0};
    comp[v0] = ncomp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int h : s.verts[v].fan) {
        int w = s.vert_of_half[s.twin(h)];
        if (w >= 0 && comp[w] < 0) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
      }
    }
    ++ncomp;
  }
  out.components = ncomp;
  std::vector<int> comp_chi(ncomp, 0), comp_circ(ncomp, 0), comp_marked(ncomp, 0);
  for (int v = 0; v < V; ++v)
    if (s.verts[v].alive) {
      comp_chi[comp[v]] += 1;
      if (s.verts[v].marked) comp_marked[comp[v]] += 1;
    }
  for (int e = 0; e < s.edges; ++e)
    if (s.edge_alive[e]) comp_chi[comp[s.vert_of_half[s.half_tail(e)]]] -= 1;
  for (const auto& circ : out.circles)
    comp_circ[comp[s.vert_of_half[circ.arrivals[0]]]] += 1;
  out.genus.resize(ncomp);
  out.valid = true;
  for (int c = 0; c < ncomp; ++c) {
    int twice_g = 2 - comp_circ[c] - comp_chi[c];
    if (twice_g % 2 != 0) {
      out.valid = false;
      out.problem = "odd genus bookkeeping";
    }
    out.genus[c] = twice_g / 2;
    if (comp_marked[c] == 0) {
      out.valid = false;
      out.problem = "component without marked point";
    }
  }
  if (out.n_left != out.n_right) {
    out.valid = false;
    out.problem = "left/right arc counts differ";
  }
  return out;
}

SurfaceRecipe recipe_from_json_text(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  SurfaceRecipe r;
  r.disks = j.at("disks").get<int>();
  if (r.disks < 1) throw std::invalid_argument("recipe needs at least one disk");
  for (const auto& js : j.at("steps")) {
    RecipeStep st;
    std::string op = js.at("op").get<std::string>();
    if (op == "glue") {
      st.op = RecipeStep::Op::glue;
      st.x = js.at("x").get<std::string>();
      st.y = js.at("y").get<std::string>();
    } else if (op == "forget") {
      st.op = RecipeStep::Op::forget;
      st.x = js.at("x").get<std::string>();
    } else {
      throw std::invalid_argument("unknown recipe op: " + op);
    }
    r.steps.push_back(st);
  }
  return r;
}

std::string recipe_to_json_text(const SurfaceRecipe& r) {
  nlohmann::ordered_json j;
  j["disks"] = r.disks;
  auto steps = nlohmann::ordered_json::array();
  for (const auto& st : r.steps) {
    nlohmann::ordered_json js;
    if (st.op == RecipeStep::Op::glue) {
      js["op"] = "glue";
      js["x"] = st.x;
      js["y"] = st.y;
    } else {
      js["op"] = "forget";
      js["x"] = st.x;
    }
    steps.push_back(js);
  }
  j["steps"] = steps;
  return j.dump(2);
}

MarkedSurface replay(const SurfaceRecipe& r) {
  MarkedSurface s = MarkedSurface::disjoint_disks(r.disks);
  for (const auto& st : r.steps) {
    if (st.op == RecipeStep::Op::glue)
      s.corner_glue(st.x, st.y);
    else
      s.forget_point(st.x);
  }
  return s;
}

}  // namespace qpv

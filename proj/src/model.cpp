#include "algstoch/model.hpp"

#include "algstoch/errors.hpp"
#include "algstoch/rational.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace algstoch {

namespace {

using json = nlohmann::ordered_json;

class Reader {
 public:
  std::vector<std::string> errors;

  void error(const std::string& path, const std::string& message) { errors.push_back(path + ": " + message); }

  const json* member(const json& obj, const std::string& path, const char* key, bool required = true) {
    if (!obj.is_object()) {
      error(path, "expected an object");
      return nullptr;
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) error(path, std::string("missing key '") + key + "'");
      return nullptr;
    }
    return &*it;
  }

  std::string string(const json& j, const std::string& path) {
    if (!j.is_string()) {
      error(path, "expected a string");
      return {};
    }
    return j.get<std::string>();
  }

  std::string string_member(const json& obj, const std::string& path, const char* key) {
    const auto* j = member(obj, path, key);
    return j ? string(*j, path + "/" + key) : std::string{};
  }

  int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) {
      error(path, "expected an integer");
      return 0;
    }
    return j.get<int>();
  }

  double number(const json& j, const std::string& path) {
    if (!j.is_number()) {
      error(path, "expected a number");
      return 0.0;
    }
    return j.get<double>();
  }

  const json* array(const json& j, const std::string& path) {
    if (!j.is_array()) {
      error(path, "expected an array");
      return nullptr;
    }
    return &j;
  }

  std::vector<std::string> strings(const json& j, const std::string& path) {
    std::vector<std::string> out;
    if (!array(j, path)) return out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string(j[i], path + "/" + std::to_string(i)));
    return out;
  }

  OrderedPairs<std::string> string_pairs(const json& j, const std::string& path) {
    OrderedPairs<std::string> out;
    if (!j.is_object()) {
      error(path, "expected an object");
      return out;
    }
    for (const auto& [k, v] : j.items()) out.emplace_back(k, string(v, path + "/" + k));
    return out;
  }

  std::map<std::string, std::vector<std::string>> table(const json& j, const std::string& path) {
    std::map<std::string, std::vector<std::string>> out;
    if (!j.is_object()) {
      error(path, "expected an object");
      return out;
    }
    for (const auto& [k, v] : j.items()) out[k] = strings(v, path + "/" + k);
    return out;
  }

  Value value(const json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return j.get<std::string>();
    if (j.is_array()) {
      std::vector<double> out;
      for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "/" + std::to_string(i)));
      return out;
    }
    error(path, "expected a number, string or array of numbers");
    return 0.0;
  }
};

EventSpec read_event(Reader& r, const json& j, const std::string& path) {
  EventSpec e;
  e.id = r.string_member(j, path, "id");
  if (const auto* a = r.member(j, path, "atoms")) e.atoms = r.strings(*a, path + "/atoms");
  if (j.is_object() && j.contains("levels")) {
    SimplicialTables t;
    if (const auto* levels = r.array(j["levels"], path + "/levels")) {
      for (std::size_t i = 0; i < levels->size(); ++i) {
        t.levels.push_back(r.strings((*levels)[i], path + "/levels/" + std::to_string(i)));
      }
    }
    for (const char* key : {"faces", "degeneracies"}) {
      const auto* tab = r.member(j, path, key);
      if (!tab || !r.array(*tab, path + "/" + key)) continue;
      auto& dest = std::string(key) == "faces" ? t.faces : t.degeneracies;
      for (std::size_t i = 0; i < tab->size(); ++i) {
        dest.push_back(r.table((*tab)[i], path + "/" + key + "/" + std::to_string(i)));
      }
    }
    e.tables = std::move(t);
    return e;
  }
  if (const auto* v = r.member(j, path, "vertices")) e.vertices = r.strings(*v, path + "/vertices");
  if (const auto* s = r.member(j, path, "simplices"); s && r.array(*s, path + "/simplices")) {
    for (std::size_t i = 0; i < s->size(); ++i) {
      e.simplices.push_back(r.strings((*s)[i], path + "/simplices/" + std::to_string(i)));
    }
  }
  return e;
}

MapSpec read_map(Reader& r, const json& j, const std::string& path) {
  MapSpec m;
  m.id = r.string_member(j, path, "id");
  m.source = r.string_member(j, path, "source");
  m.target = r.string_member(j, path, "target");
  if (const auto* v = r.member(j, path, "vertex_map", false)) m.vertex_map = r.string_pairs(*v, path + "/vertex_map");
  if (const auto* l = r.member(j, path, "level_maps", false); l && r.array(*l, path + "/level_maps")) {
    m.level_maps.emplace();
    for (std::size_t i = 0; i < l->size(); ++i) {
      m.level_maps->push_back(r.string_pairs((*l)[i], path + "/level_maps/" + std::to_string(i)));
    }
  }
  if (m.vertex_map.has_value() == m.level_maps.has_value()) {
    r.error(path, "a map needs exactly one of 'vertex_map' and 'level_maps'");
  }
  if (const auto* a = r.member(j, path, "atom_map", false)) m.atom_map = r.string_pairs(*a, path + "/atom_map");
  return m;
}

template <class F>
void each(Reader& r, const json* j, const std::string& path, F&& f) {
  if (!j || !r.array(*j, path)) return;
  for (std::size_t i = 0; i < j->size(); ++i) f((*j)[i], path + "/" + std::to_string(i));
}

void check_references(Reader& r, const ModelSpec& s) {
  std::set<std::string> atoms(s.ground_set.begin(), s.ground_set.end());
  if (atoms.size() != s.ground_set.size()) r.error("/ground_set", "duplicate atom");
  if (s.ground_set.size() > AtomSet::max_universe) r.error("/ground_set", "too many atoms");

  std::set<std::string> events;
  for (std::size_t i = 0; i < s.events.size(); ++i) {
    const auto path = "/events/" + std::to_string(i);
    if (!events.insert(s.events[i].id).second) r.error(path, "duplicate event '" + s.events[i].id + "'");
    for (const auto& a : s.events[i].atoms) {
      if (!atoms.count(a)) r.error(path + "/atoms", "unknown atom '" + a + "'");
    }
  }

  std::map<std::string, const MapSpec*> maps;
  for (std::size_t i = 0; i < s.maps.size(); ++i) {
    const auto path = "/maps/" + std::to_string(i);
    const auto& m = s.maps[i];
    if (!maps.emplace(m.id, &m).second) r.error(path, "duplicate map '" + m.id + "'");
    for (const auto* end : {&m.source, &m.target}) {
      if (!events.count(*end)) r.error(path, "unknown event '" + *end + "'");
    }
    for (const auto& [from, to] : m.atom_map) {
      if (!atoms.count(from) || !atoms.count(to)) r.error(path + "/atom_map", "unknown atom in '" + from + "' -> '" + to + "'");
    }
  }

  std::set<std::string> objects;
  for (std::size_t i = 0; i < s.objects.size(); ++i) {
    const auto& o = s.objects[i];
    const auto path = "/category/objects/" + std::to_string(i);
    if (!events.count(o)) r.error(path, "object '" + o + "' names no declared event");
    if (!objects.insert(o).second) r.error(path, "duplicate object '" + o + "'");
  }

  std::set<std::string> morphisms;
  for (const auto& o : s.objects) morphisms.insert("id_" + o);
  for (std::size_t i = 0; i < s.morphisms.size(); ++i) {
    const auto& m = s.morphisms[i];
    const auto path = "/category/morphisms/" + std::to_string(i);
    if (!morphisms.insert(m.id).second) r.error(path, "duplicate morphism '" + m.id + "'");
    for (const auto* end : {&m.source, &m.target}) {
      if (!objects.count(*end)) r.error(path, "unknown object '" + *end + "'");
    }
    if (m.map) {
      auto it = maps.find(*m.map);
      if (it == maps.end()) {
        r.error(path + "/map", "unknown map '" + *m.map + "'");
      } else if (it->second->source != m.source || it->second->target != m.target) {
        r.error(path + "/map", "map '" + *m.map + "' does not run from '" + m.source + "' to '" + m.target + "'");
      }
    }
  }
  auto need_morphism = [&](const std::string& id, const std::string& path) {
    if (!morphisms.count(id)) r.error(path, "unknown morphism '" + id + "'");
  };
  for (std::size_t i = 0; i < s.composition.size(); ++i) {
    const auto path = "/category/composition/" + std::to_string(i);
    const auto& c = s.composition[i];
    for (const auto* id : {&c.first, &c.second, &c.result}) need_morphism(*id, path);
  }
  for (std::size_t i = 0; i < s.pullbacks.size(); ++i) {
    const auto path = "/category/pullbacks/" + std::to_string(i);
    const auto& p = s.pullbacks[i];
    for (const auto* id : {&p.f, &p.g, &p.first, &p.second}) need_morphism(*id, path);
    if (!objects.count(p.object)) r.error(path, "unknown object '" + p.object + "'");
  }

  std::set<Rational> times;
  int m = 1;
  if (s.filtration) {
    m = s.filtration->fiber_resolution;
    if (m < 1) r.error("/filtration/fiber_resolution", "must be at least 1");
    for (std::size_t i = 0; i < s.filtration->base_times.size(); ++i) {
      try {
        times.insert(parse_rational(s.filtration->base_times[i]));
      } catch (const Error& e) {
        r.error("/filtration/base_times/" + std::to_string(i), e.what());
      }
    }
    if (times.empty()) r.error("/filtration/base_times", "at least one base time is required");
  }
  auto need_point = [&](const std::string& time, int k, const std::string& path) {
    try {
      if (!times.count(parse_rational(time))) r.error(path, "time '" + time + "' is not a base time");
    } catch (const Error& e) {
      r.error(path, e.what());
    }
    if (k < 1 || k > m) r.error(path, "fiber step " + std::to_string(k) + " outside 1.." + std::to_string(m));
  };
  if (s.filtration) {
    for (std::size_t i = 0; i < s.filtration->levels.size(); ++i) {
      const auto path = "/filtration/levels/" + std::to_string(i);
      const auto& l = s.filtration->levels[i];
      need_point(l.time, l.k, path);
      for (const auto& e : l.events) {
        if (!objects.count(e)) r.error(path + "/events", "unknown object '" + e + "'");
      }
    }
  }
  if (!s.operad.empty() && !s.filtration) r.error("/operad", "operad generators need a filtration");
  for (std::size_t i = 0; i < s.operad.size(); ++i) {
    const auto path = "/operad/" + std::to_string(i);
    const auto& g = s.operad[i];
    if (s.filtration) need_point(g.time, g.k, path);
    for (const auto& e : g.inputs) {
      if (!objects.count(e)) r.error(path + "/inputs", "unknown object '" + e + "'");
    }
    if (!objects.count(g.output)) r.error(path + "/output", "unknown object '" + g.output + "'");
  }

  if (s.measure) {
    double total = 0.0;
    std::set<std::string> seen;
    for (const auto& [atom, w] : *s.measure) {
      if (!atoms.count(atom)) r.error("/measure/" + atom, "unknown atom '" + atom + "'");
      if (!seen.insert(atom).second) r.error("/measure/" + atom, "duplicate atom");
      if (!(w >= 0.0) || !std::isfinite(w)) r.error("/measure/" + atom, "weight must be finite and non-negative");
      total += w;
    }
    if (seen.size() != atoms.size()) r.error("/measure", "every atom of the ground set needs a weight");
    if (std::abs(total - 1.0) > ProbabilityMeasure::sum_tolerance) {
      r.error("/measure", "weights sum to " + format_double(total) + ", not 1");
    }
  }

  for (std::size_t i = 0; i < s.presheaves.size(); ++i) {
    const auto path = "/presheaves/" + std::to_string(i);
    for (const auto& [o, v] : s.presheaves[i].sections) {
      if (!objects.count(o)) r.error(path + "/sections", "unknown object '" + o + "'");
    }
    for (const auto& [mid, v] : s.presheaves[i].restrictions) {
      if (!morphisms.count(mid)) r.error(path + "/restrictions", "unknown morphism '" + mid + "'");
    }
  }
}

json to_json(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return std::get<std::vector<double>>(v);
}

json pairs_json(const OrderedPairs<std::string>& p) {
  json out = json::object();
  for (const auto& [k, v] : p) out[k] = v;
  return out;
}

json table_json(const std::vector<std::map<std::string, std::vector<std::string>>>& tables) {
  json out = json::array();
  for (const auto& t : tables) {
    json level = json::object();
    for (const auto& [k, v] : t) level[k] = v;
    out.push_back(std::move(level));
  }
  return out;
}

}  // namespace

ModelSpec parse_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what());
  }

  Reader r;
  ModelSpec s;
  if (!doc.is_object()) throw ParseError("/: the model must be a JSON object");
  if (const auto* v = r.member(doc, "", "schema")) {
    if (r.integer(*v, "/schema") != model_schema_version) {
      r.error("/schema", "unsupported schema version, expected " + std::to_string(model_schema_version));
    }
  }
  if (const auto* n = r.member(doc, "", "name", false)) s.name = r.string(*n, "/name");
  if (const auto* g = r.member(doc, "", "ground_set")) s.ground_set = r.strings(*g, "/ground_set");
  if (const auto* d = r.member(doc, "", "d_max", false)) s.d_max = r.integer(*d, "/d_max");
  each(r, r.member(doc, "", "events"), "/events",
       [&](const json& j, const std::string& p) { s.events.push_back(read_event(r, j, p)); });
  each(r, r.member(doc, "", "maps", false), "/maps",
       [&](const json& j, const std::string& p) { s.maps.push_back(read_map(r, j, p)); });

  if (const auto* cat = r.member(doc, "", "category")) {
    if (const auto* o = r.member(*cat, "/category", "objects")) s.objects = r.strings(*o, "/category/objects");
    each(r, r.member(*cat, "/category", "morphisms", false), "/category/morphisms",
         [&](const json& j, const std::string& p) {
           MorphismSpec m{r.string_member(j, p, "id"), r.string_member(j, p, "source"),
                          r.string_member(j, p, "target"), std::nullopt};
           if (const auto* map = r.member(j, p, "map", false)) m.map = r.string(*map, p + "/map");
           s.morphisms.push_back(std::move(m));
         });
    each(r, r.member(*cat, "/category", "composition", false), "/category/composition",
         [&](const json& j, const std::string& p) {
           s.composition.push_back(
               {r.string_member(j, p, "first"), r.string_member(j, p, "second"), r.string_member(j, p, "result")});
         });
    each(r, r.member(*cat, "/category", "pullbacks", false), "/category/pullbacks",
         [&](const json& j, const std::string& p) {
           s.pullbacks.push_back({r.string_member(j, p, "f"), r.string_member(j, p, "g"),
                                  r.string_member(j, p, "object"), r.string_member(j, p, "first"),
                                  r.string_member(j, p, "second")});
         });
  }

  if (const auto* f = r.member(doc, "", "filtration", false)) {
    FiltrationSpec fs;
    if (const auto* t = r.member(*f, "/filtration", "base_times")) fs.base_times = r.strings(*t, "/filtration/base_times");
    if (const auto* m = r.member(*f, "/filtration", "fiber_resolution")) {
      fs.fiber_resolution = r.integer(*m, "/filtration/fiber_resolution");
    }
    each(r, r.member(*f, "/filtration", "levels"), "/filtration/levels", [&](const json& j, const std::string& p) {
      LevelSpec l;
      l.time = r.string_member(j, p, "time");
      if (const auto* k = r.member(j, p, "k")) l.k = r.integer(*k, p + "/k");
      if (const auto* e = r.member(j, p, "events")) l.events = r.strings(*e, p + "/events");
      fs.levels.push_back(std::move(l));
    });
    s.filtration = std::move(fs);
  }

  each(r, r.member(doc, "", "operad", false), "/operad", [&](const json& j, const std::string& p) {
    OperadSpec g;
    g.id = r.string_member(j, p, "id");
    g.time = r.string_member(j, p, "time");
    if (const auto* k = r.member(j, p, "k")) g.k = r.integer(*k, p + "/k");
    if (const auto* in = r.member(j, p, "inputs")) g.inputs = r.strings(*in, p + "/inputs");
    g.output = r.string_member(j, p, "output");
    s.operad.push_back(std::move(g));
  });

  if (const auto* m = r.member(doc, "", "measure", false)) {
    if (!m->is_object()) {
      r.error("/measure", "expected an object");
    } else {
      s.measure.emplace();
      for (const auto& [atom, w] : m->items()) s.measure->emplace_back(atom, r.number(w, "/measure/" + atom));
    }
  }

  each(r, r.member(doc, "", "presheaves", false), "/presheaves", [&](const json& j, const std::string& p) {
    PresheafSpec ps;
    ps.id = r.string_member(j, p, "id");
    if (const auto* sec = r.member(j, p, "sections"); sec && sec->is_object()) {
      for (const auto& [obj, vals] : sec->items()) {
        std::vector<Value> values;
        each(r, &vals, p + "/sections/" + obj,
             [&](const json& v, const std::string& vp) { values.push_back(r.value(v, vp)); });
        ps.sections.emplace_back(obj, std::move(values));
      }
    } else if (sec) {
      r.error(p + "/sections", "expected an object");
    }
    if (const auto* res = r.member(j, p, "restrictions", false); res && res->is_object()) {
      for (const auto& [mid, table] : res->items()) {
        std::vector<std::size_t> idx;
        each(r, &table, p + "/restrictions/" + mid, [&](const json& v, const std::string& vp) {
          if (!v.is_number_unsigned()) {
            r.error(vp, "expected a section index");
          } else {
            idx.push_back(v.get<std::size_t>());
          }
        });
        ps.restrictions.emplace_back(mid, std::move(idx));
      }
    } else if (res) {
      r.error(p + "/restrictions", "expected an object");
    }
    s.presheaves.push_back(std::move(ps));
  });

  for (const auto& [key, value] : doc.items()) {
    static const std::set<std::string> known{"schema", "name", "ground_set", "d_max", "events", "maps",
                                             "category", "filtration", "operad", "measure", "presheaves"};
    if (!known.count(key)) r.error("/" + key, "unknown section");
  }

  if (r.errors.empty()) check_references(r, s);
  if (!r.errors.empty()) {
    std::string msg;
    for (const auto& e : r.errors) msg += (msg.empty() ? "" : "\n") + e;
    throw ParseError(msg);
  }
  return s;
}

std::string serialize_model(const ModelSpec& s) {
  json doc = json::object();
  doc["schema"] = model_schema_version;
  if (!s.name.empty()) doc["name"] = s.name;
  doc["ground_set"] = s.ground_set;
  doc["d_max"] = s.d_max;

  json events = json::array();
  for (const auto& e : s.events) {
    json j = json::object();
    j["id"] = e.id;
    j["atoms"] = e.atoms;
    if (e.tables) {
      j["levels"] = e.tables->levels;
      j["faces"] = table_json(e.tables->faces);
      j["degeneracies"] = table_json(e.tables->degeneracies);
    } else {
      j["vertices"] = e.vertices;
      j["simplices"] = e.simplices;
    }
    events.push_back(std::move(j));
  }
  doc["events"] = std::move(events);

  if (!s.maps.empty()) {
    json maps = json::array();
    for (const auto& m : s.maps) {
      json j = json::object();
      j["id"] = m.id;
      j["source"] = m.source;
      j["target"] = m.target;
      if (m.vertex_map) j["vertex_map"] = pairs_json(*m.vertex_map);
      if (m.level_maps) {
        json levels = json::array();
        for (const auto& l : *m.level_maps) levels.push_back(pairs_json(l));
        j["level_maps"] = std::move(levels);
      }
      if (!m.atom_map.empty()) j["atom_map"] = pairs_json(m.atom_map);
      maps.push_back(std::move(j));
    }
    doc["maps"] = std::move(maps);
  }

  json cat = json::object();
  cat["objects"] = s.objects;
  json morphisms = json::array();
  for (const auto& m : s.morphisms) {
    json j = {{"id", m.id}, {"source", m.source}, {"target", m.target}};
    if (m.map) j["map"] = *m.map;
    morphisms.push_back(std::move(j));
  }
  cat["morphisms"] = std::move(morphisms);
  if (!s.composition.empty()) {
    json comp = json::array();
    for (const auto& c : s.composition) comp.push_back({{"first", c.first}, {"second", c.second}, {"result", c.result}});
    cat["composition"] = std::move(comp);
  }
  if (!s.pullbacks.empty()) {
    json pb = json::array();
    for (const auto& p : s.pullbacks) {
      pb.push_back({{"f", p.f}, {"g", p.g}, {"object", p.object}, {"first", p.first}, {"second", p.second}});
    }
    cat["pullbacks"] = std::move(pb);
  }
  doc["category"] = std::move(cat);

  if (s.filtration) {
    json f = json::object();
    f["base_times"] = s.filtration->base_times;
    f["fiber_resolution"] = s.filtration->fiber_resolution;
    json levels = json::array();
    for (const auto& l : s.filtration->levels) levels.push_back({{"time", l.time}, {"k", l.k}, {"events", l.events}});
    f["levels"] = std::move(levels);
    doc["filtration"] = std::move(f);
  }
  if (!s.operad.empty()) {
    json ops = json::array();
    for (const auto& g : s.operad) {
      ops.push_back({{"id", g.id}, {"time", g.time}, {"k", g.k}, {"inputs", g.inputs}, {"output", g.output}});
    }
    doc["operad"] = std::move(ops);
  }
  if (s.measure) {
    json m = json::object();
    for (const auto& [atom, w] : *s.measure) m[atom] = w;
    doc["measure"] = std::move(m);
  }
  if (!s.presheaves.empty()) {
    json ps = json::array();
    for (const auto& p : s.presheaves) {
      json j = json::object();
      j["id"] = p.id;
      json sections = json::object();
      for (const auto& [obj, values] : p.sections) {
        json arr = json::array();
        for (const auto& v : values) arr.push_back(to_json(v));
        sections[obj] = std::move(arr);
      }
      j["sections"] = std::move(sections);
      if (!p.restrictions.empty()) {
        json res = json::object();
        for (const auto& [mid, idx] : p.restrictions) res[mid] = idx;
        j["restrictions"] = std::move(res);
      }
      ps.push_back(std::move(j));
    }
    doc["presheaves"] = std::move(ps);
  }
  return doc.dump(2) + "\n";
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

const PresheafData& Model::presheaf(std::string_view id) const {
  for (const auto& p : presheaves) {
    if (p.id == id) return p;
  }
  throw LookupError("no presheaf '" + std::string(id) + "' in the model");
}

FilteredSigmaAlgebra Model::levels() const {
  if (filtration) return *filtration;
  std::vector<std::size_t> all(category->object_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return FilteredSigmaAlgebra(category, FramedIndex({Rational(0)}, 1), {{0, all}});
}

Model build_model(ModelSpec spec) {
  Model m;
  m.hash = fnv1a_hex(serialize_model(spec));
  m.ground = GroundSet(spec.ground_set);

  std::map<std::string, EventPtr> events;
  for (const auto& e : spec.events) {
    const auto atoms = m.ground.subset(e.atoms);
    auto event = e.tables ? SimplicialEvent::from_tables(*e.tables, atoms, spec.d_max)
                          : SimplicialEvent::from_complex(e.vertices, e.simplices, atoms, spec.d_max);
    events[e.id] = std::make_shared<const SimplicialEvent>(std::move(event));
  }

  std::map<std::string, EventMap> maps;
  for (const auto& ms : spec.maps) {
    std::map<std::size_t, std::size_t> atom_map;
    for (const auto& [from, to] : ms.atom_map) atom_map[*m.ground.find(from)] = *m.ground.find(to);
    const auto& src = events.at(ms.source);
    const auto& tgt = events.at(ms.target);
    if (ms.vertex_map) {
      std::map<std::string, std::string> vm(ms.vertex_map->begin(), ms.vertex_map->end());
      maps.emplace(ms.id, EventMap::from_vertex_map(src, tgt, vm, atom_map));
    } else {
      std::vector<std::map<std::string, std::string>> lm;
      for (const auto& l : *ms.level_maps) lm.emplace_back(l.begin(), l.end());
      maps.emplace(ms.id, EventMap::from_names(src, tgt, lm, atom_map));
    }
  }

  FiniteCategory::Builder b;
  for (const auto& o : spec.objects) b.add_object(o, events.at(o));
  for (const auto& mo : spec.morphisms) {
    std::optional<EventMap> map;
    if (mo.map) map = maps.at(*mo.map);
    b.add_morphism(mo.id, mo.source, mo.target, map);
  }
  for (const auto& c : spec.composition) b.add_composition(c.first, c.second, c.result);
  for (const auto& p : spec.pullbacks) b.add_pullback(p.f, p.g, p.object, p.first, p.second);
  m.category = std::make_shared<const FiniteCategory>(b.build());

  if (spec.filtration) {
    std::vector<Rational> times;
    for (const auto& t : spec.filtration->base_times) times.push_back(parse_rational(t));
    FramedIndex index(times, spec.filtration->fiber_resolution);
    auto point_of = [&](const std::string& time, int k) {
      return index.point(*index.find_time(parse_rational(time)), k);
    };
    std::map<std::size_t, std::vector<std::size_t>> declared;
    for (const auto& l : spec.filtration->levels) {
      auto& objs = declared[point_of(l.time, l.k)];
      for (const auto& e : l.events) objs.push_back(m.category->object_index(e));
    }
    std::vector<OperadGenerator> operad;
    for (const auto& g : spec.operad) {
      OperadGenerator gen{g.id, point_of(g.time, g.k), {}, m.category->object_index(g.output)};
      for (const auto& in : g.inputs) gen.inputs.push_back(m.category->object_index(in));
      operad.push_back(std::move(gen));
    }
    m.filtration.emplace(m.category, index, declared, std::move(operad));
  }

  if (spec.measure) {
    std::vector<double> weights(m.ground.size(), 0.0);
    for (const auto& [atom, w] : *spec.measure) weights[*m.ground.find(atom)] = w;
    m.measure.emplace(std::move(weights));
  }

  for (const auto& ps : spec.presheaves) {
    PresheafData data{ps.id, {ps.sections.begin(), ps.sections.end()}, {ps.restrictions.begin(), ps.restrictions.end()}};
    Presheaf(*m.category, data);
    m.presheaves.push_back(std::move(data));
  }
  m.spec = std::move(spec);
  return m;
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open model file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return build_model(parse_model(buf.str()));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace algstoch

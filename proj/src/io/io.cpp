#include "xtilt/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace xtilt::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

void expect_keys(const Json& j, const std::string& where, std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) fail(where + ": expected an object");
  std::set<std::string> known;
  for (const char* k : required) {
    known.insert(k);
    if (!j.contains(k)) fail(where + ": missing key \"" + k + "\"");
  }
  for (const char* k : optional) known.insert(k);
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) fail(where + ": unknown key \"" + k + "\"");
}

const Json& field(const Json& j, const char* key) { return j.at(key); }

long get_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + ": expected an integer");
  return j.get<long>();
}

std::size_t get_size(const Json& j, const std::string& where) {
  const long v = get_int(j, where);
  if (v < 0) fail(where + ": expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

std::string get_string(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where + ": expected a string");
  return j.get<std::string>();
}

bool get_bool(const Json& j, const std::string& where) {
  if (!j.is_boolean()) fail(where + ": expected a boolean");
  return j.get<bool>();
}

Json weight_to_json(const Weight& w) { return Json(w); }

Weight weight_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected a weight array");
  Weight w;
  for (const auto& x : j) w.push_back(static_cast<int>(get_int(x, where)));
  return w;
}

void check_header(const Json& j, const std::string& format) {
  if (get_string(field(j, "format"), "format") != format) fail("expected format \"" + format + "\"");
  if (get_int(field(j, "version"), "version") != kFormatVersion)
    fail("unsupported " + format + " version " + field(j, "version").dump());
}

Json header(const std::string& format) {
  Json j;
  j["format"] = format;
  j["version"] = kFormatVersion;
  return j;
}

void check_context(const Json& j, const XObject& m, const std::string& where) {
  if (GroundRing::parse(get_string(field(j, "ring"), where + ".ring")) != m.ring())
    fail(where + ": ring differs from the object");
  if (root_system_from_json(field(j, "root_system")) != m.rs()) fail(where + ": root system differs from the object");
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

Json matrix_to_json(const Mat& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json e = Json::array();
  for (const auto& x : m.entries()) e.push_back(x.to_string());
  j["entries"] = e;
  return j;
}

Mat matrix_from_json(const Json& j, const GroundRing& ring) {
  expect_keys(j, "matrix", {"rows", "cols", "entries"});
  const std::size_t r = get_size(field(j, "rows"), "matrix.rows"), c = get_size(field(j, "cols"), "matrix.cols");
  const Json& e = field(j, "entries");
  if (!e.is_array() || e.size() != r * c) fail("matrix: expected " + std::to_string(r * c) + " entries");
  Mat m(ring, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < c; ++k) m(i, k) = RingElem::parse(get_string(e[i * c + k], "matrix entry"), ring);
  return m;
}

Json root_system_to_json(const RootSystem& rs) {
  Json j;
  if (!rs.label().empty()) j["label"] = rs.label();
  j["cartan"] = rs.cartan();
  return j;
}

RootSystem root_system_from_json(const Json& j) {
  expect_keys(j, "root_system", {}, {"label", "cartan"});
  std::optional<RootSystem> from_label;
  if (j.contains("label")) from_label = RootSystem::from_label(get_string(j["label"], "root_system.label"));
  if (!j.contains("cartan")) {
    if (!from_label) fail("root_system: needs a label or a Cartan matrix");
    return *from_label;
  }
  const Json& c = j["cartan"];
  if (!c.is_array()) fail("root_system.cartan: expected an array of rows");
  std::vector<std::vector<int>> a;
  for (const auto& row : c) {
    if (!row.is_array()) fail("root_system.cartan: expected an array of rows");
    std::vector<int> r;
    for (const auto& x : row) r.push_back(static_cast<int>(get_int(x, "root_system.cartan")));
    a.push_back(r);
  }
  RootSystem rs = RootSystem::from_cartan(a, from_label ? from_label->label() : "");
  if (from_label && *from_label != rs) fail("root_system: label and Cartan matrix disagree");
  return rs;
}

Json object_to_json(const XObject& m) {
  Json j = header("xtilt-object");
  j["ring"] = m.ring().descriptor();
  j["root_system"] = root_system_to_json(m.rs());
  Json tops = Json::array();
  for (const auto& t : m.tops()) tops.push_back(weight_to_json(t));
  j["tops"] = tops;
  j["hull"] = m.hull();
  Json ws = Json::array();
  for (const auto& w : m.region()) {
    Json e;
    e["weight"] = weight_to_json(w);
    e["rank"] = m.rank(w);
    ws.push_back(e);
  }
  j["weights"] = ws;
  Json ops = Json::array();
  for (const auto* table : {&m.e_ops(), &m.f_ops()}) {
    const char* kind = table == &m.e_ops() ? "E" : "F";
    for (const auto& [k, a] : *table) {
      Json e;
      e["kind"] = kind;
      e["mu"] = weight_to_json(k.mu);
      e["alpha"] = k.alpha;
      e["n"] = k.n;
      e["matrix"] = matrix_to_json(a);
      ops.push_back(e);
    }
  }
  j["operators"] = ops;
  return j;
}

XObject object_from_json(const Json& j) {
  expect_keys(j, "object", {"format", "version", "ring", "root_system", "weights", "operators"}, {"tops", "hull"});
  check_header(j, "xtilt-object");
  const GroundRing ring = GroundRing::parse(get_string(field(j, "ring"), "ring"));
  const RootSystem rs = root_system_from_json(field(j, "root_system"));
  XObject m(ring, rs);
  std::vector<Weight> tops;
  if (j.contains("tops")) {
    if (!j["tops"].is_array()) fail("tops: expected an array");
    for (const auto& t : j["tops"]) tops.push_back(weight_from_json(t, "tops"));
  }
  const bool hull = j.contains("hull") && get_bool(j["hull"], "hull");
  if (!field(j, "weights").is_array()) fail("weights: expected an array");
  for (const auto& e : field(j, "weights")) {
    expect_keys(e, "weights[]", {"weight", "rank"});
    const Weight w = weight_from_json(e["weight"], "weights[].weight");
    if (w.size() != rs.rank()) fail("weights[]: weight " + weight_to_string(w) + " has the wrong length");
    if (m.in_region(w)) fail("weights[]: duplicate weight " + weight_to_string(w));
    m.add_weight(w, get_size(e["rank"], "weights[].rank"));
  }
  for (const auto& t : tops)
    if (t.size() != rs.rank()) fail("tops: weight " + weight_to_string(t) + " has the wrong length");
  m.set_support(tops, hull);
  if (!field(j, "operators").is_array()) fail("operators: expected an array");
  for (const auto& e : field(j, "operators")) {
    expect_keys(e, "operators[]", {"kind", "mu", "alpha", "n", "matrix"});
    const std::string kind = get_string(e["kind"], "operators[].kind");
    if (kind != "E" && kind != "F") fail("operators[].kind: expected \"E\" or \"F\"");
    const Weight mu = weight_from_json(e["mu"], "operators[].mu");
    if (mu.size() != rs.rank()) fail("operators[].mu: wrong length");
    const long alpha = get_int(e["alpha"], "operators[].alpha");
    const long n = get_int(e["n"], "operators[].n");
    if (alpha < 0 || static_cast<std::size_t>(alpha) >= rs.rank()) fail("operators[].alpha out of range");
    if (n <= 0) fail("operators[].n must be positive");
    const Weight top = mu + static_cast<int>(n) * rs.simple_root(alpha);
    if (!m.in_region(mu) || !m.in_region(top))
      fail("operators[]: " + kind + " at " + weight_to_string(mu) + " leaves the region");
    const Mat a = matrix_from_json(e["matrix"], ring);
    const bool is_e = kind == "E";
    const std::size_t rows = is_e ? m.rank(top) : m.rank(mu), cols = is_e ? m.rank(mu) : m.rank(top);
    if (a.rows() != rows || a.cols() != cols)
      fail("operators[]: " + kind + " at " + weight_to_string(mu) + " has the wrong shape");
    const auto& table = is_e ? m.e_ops() : m.f_ops();
    if (table.count(OpKey{mu, static_cast<int>(alpha), static_cast<int>(n)}))
      fail("operators[]: duplicate " + kind + " at " + weight_to_string(mu));
    if (is_e) m.set_e(mu, static_cast<int>(alpha), static_cast<int>(n), a);
    else m.set_f(mu, static_cast<int>(alpha), static_cast<int>(n), a);
  }
  return m;
}

Json form_to_json(const XObject& m, const GradedForm& b) {
  Json j = header("xtilt-form");
  j["ring"] = m.ring().descriptor();
  j["root_system"] = root_system_to_json(m.rs());
  Json gs = Json::array();
  for (const auto& w : m.region()) {
    auto it = b.gram.find(w);
    if (it == b.gram.end() || it->second.empty()) continue;
    Json e;
    e["weight"] = weight_to_json(w);
    e["gram"] = matrix_to_json(it->second);
    gs.push_back(e);
  }
  j["grams"] = gs;
  return j;
}

GradedForm form_from_json(const Json& j, const XObject& m) {
  expect_keys(j, "form", {"format", "version", "ring", "root_system", "grams"});
  check_header(j, "xtilt-form");
  check_context(j, m, "form");
  GradedForm b;
  if (!field(j, "grams").is_array()) fail("grams: expected an array");
  for (const auto& e : field(j, "grams")) {
    expect_keys(e, "grams[]", {"weight", "gram"});
    const Weight w = weight_from_json(e["weight"], "grams[].weight");
    if (b.gram.count(w)) fail("grams[]: duplicate weight " + weight_to_string(w));
    b.gram[w] = matrix_from_json(e["gram"], m.ring());
  }
  return b;
}

Json report_to_json(const Report& rep, const std::string& subject) {
  Json j = header("xtilt-report");
  j["subject"] = subject;
  j["passed"] = rep.passed();
  j["failures"] = rep.failures();
  Json es = Json::array();
  for (const auto& e : rep.entries) {
    Json x;
    x["check"] = e.check;
    x["weight"] = weight_to_json(e.weight);
    x["passed"] = e.passed;
    x["witness"] = e.witness;
    es.push_back(x);
  }
  j["entries"] = es;
  return j;
}

Report report_from_json(const Json& j) {
  expect_keys(j, "report", {"format", "version", "subject", "passed", "failures", "entries"});
  check_header(j, "xtilt-report");
  Report rep;
  if (!field(j, "entries").is_array()) fail("entries: expected an array");
  for (const auto& e : field(j, "entries")) {
    expect_keys(e, "entries[]", {"check", "weight", "passed", "witness"});
    rep.add(get_string(e["check"], "entries[].check"), weight_from_json(e["weight"], "entries[].weight"),
            get_bool(e["passed"], "entries[].passed"), get_string(e["witness"], "entries[].witness"));
  }
  if (rep.passed() != get_bool(field(j, "passed"), "passed") ||
      rep.failures() != get_size(field(j, "failures"), "failures"))
    fail("report: summary fields disagree with the entries");
  return rep;
}

Json character_to_json(const Character& c, const std::string& kind) {
  Json j = header("xtilt-character");
  j["kind"] = kind;
  Json es = Json::array();
  for (const auto& [w, n] : c) {
    Json e;
    e["weight"] = weight_to_json(w);
    e["multiplicity"] = n;
    es.push_back(e);
  }
  j["entries"] = es;
  return j;
}

Character character_from_json(const Json& j) {
  expect_keys(j, "character", {"format", "version", "kind", "entries"});
  check_header(j, "xtilt-character");
  const std::string kind = get_string(field(j, "kind"), "kind");
  if (kind != "character" && kind != "weyl-multiplicities" && kind != "weyl-character")
    fail("kind: unknown character kind \"" + kind + "\"");
  Character c;
  if (!field(j, "entries").is_array()) fail("entries: expected an array");
  for (const auto& e : field(j, "entries")) {
    expect_keys(e, "entries[]", {"weight", "multiplicity"});
    const Weight w = weight_from_json(e["weight"], "entries[].weight");
    if (c.count(w)) fail("entries[]: duplicate weight " + weight_to_string(w));
    c[w] = get_int(e["multiplicity"], "entries[].multiplicity");
  }
  return c;
}

std::string character_to_csv(const Character& c, std::size_t rank) {
  std::string s;
  for (std::size_t i = 0; i < rank; ++i) s += "w" + std::to_string(i + 1) + ",";
  s += "multiplicity\n";
  for (const auto& [w, n] : c) {
    for (int x : w) s += std::to_string(x) + ",";
    s += std::to_string(n) + "\n";
  }
  return s;
}

Json hom_to_json(const HomMap& f, const XObject& m, const XObject& n, bool isomorphism) {
  Json j = header("xtilt-hom");
  j["ring"] = m.ring().descriptor();
  j["root_system"] = root_system_to_json(m.rs());
  j["isomorphism"] = isomorphism;
  Json ms = Json::array();
  for (const auto& w : m.region()) {
    auto it = f.find(w);
    if (it == f.end() || (m.rank(w) == 0 && n.rank(w) == 0)) continue;
    Json e;
    e["weight"] = weight_to_json(w);
    e["matrix"] = matrix_to_json(it->second);
    ms.push_back(e);
  }
  j["maps"] = ms;
  return j;
}

HomMap hom_from_json(const Json& j, const GroundRing& ring) {
  expect_keys(j, "hom", {"format", "version", "ring", "root_system", "maps"}, {"isomorphism"});
  check_header(j, "xtilt-hom");
  if (GroundRing::parse(get_string(field(j, "ring"), "ring")) != ring) fail("hom: ring mismatch");
  HomMap f;
  if (!field(j, "maps").is_array()) fail("maps: expected an array");
  for (const auto& e : field(j, "maps")) {
    expect_keys(e, "maps[]", {"weight", "matrix"});
    const Weight w = weight_from_json(e["weight"], "maps[].weight");
    if (f.count(w)) fail("maps[]: duplicate weight " + weight_to_string(w));
    f[w] = matrix_from_json(e["matrix"], ring);
  }
  return f;
}

}  // namespace xtilt::io

// xtilt command-line front end.

#include <cstdlib>
#include <algorithm>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "xtilt/forms.hpp"
#include "xtilt/io.hpp"
#include "xtilt/xcat.hpp"

using namespace xtilt;
using io::Json;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

/// Reported as exit code 1 with a failure report.
struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Job {
  std::string command;
  std::string variant;  // build: smin | smax | smax-form
  std::string root;
  std::string cartan;   // "2,-1;-1,2"
  std::string ring = "generic";
  std::string weight;
  bool no_prune = false;
  std::optional<long> height_bound;
  bool verify_frontier = false;
  std::string explicit_weights;  // "0;-2;..." (weights separated by ';')
  std::vector<std::string> inputs;
  std::string output;
  std::string form_output;
  std::string format;
  std::string seed;
  bool require_iso = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

RootSystem job_root_system(const Job& job) {
  if (!job.cartan.empty()) {
    std::vector<std::vector<int>> a;
    for (const auto& row : split(job.cartan, ';')) a.push_back(parse_weight(row));
    RootSystem rs = RootSystem::from_cartan(a, job.root);
    if (!job.root.empty() && RootSystem::from_label(job.root) != rs)
      throw std::invalid_argument("--root and --cartan disagree");
    return rs;
  }
  if (job.root.empty()) throw std::invalid_argument("a root system is required (--root or --cartan)");
  return RootSystem::from_label(job.root);
}

Weight job_weight(const Job& job, const RootSystem& rs) {
  if (job.weight.empty()) throw std::invalid_argument("--weight is required");
  const Weight w = parse_weight(job.weight);
  rs.check_weight(w);
  return w;
}

std::string sanitize(std::string s) {
  for (auto& c : s)
    if (c == ':' || c == ',' || c == ';' || c == ' ') c = '_';
  return s;
}

/// Writes to --output, else into $XTILT_OUTPUT_DIR, else to stdout.
void emit(const std::string& explicit_path, const std::string& default_name, const std::string& text) {
  std::string path = explicit_path;
  if (path.empty()) {
    if (const char* dir = std::getenv("XTILT_OUTPUT_DIR"); dir && *dir) {
      std::filesystem::create_directories(dir);
      path = (std::filesystem::path(dir) / default_name).string();
    }
  }
  if (path.empty()) {
    std::cout << text;
    return;
  }
  io::write_file(path, text);
  std::cerr << "wrote " << path << "\n";
}

std::string input(const Job& job, std::size_t i, const char* what) {
  if (job.inputs.size() <= i) throw std::invalid_argument(std::string("missing input file: ") + what);
  return job.inputs[i];
}

XObject load_object(const std::string& path) { return io::object_from_json(io::parse_json(io::read_file(path))); }

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

std::string format_character(const Character& c, std::size_t rank, const std::string& kind, const std::string& fmt) {
  if (fmt == "json") return io::dump(io::character_to_json(c, kind));
  if (fmt == "csv") return io::character_to_csv(c, rank);
  if (fmt != "text" && !fmt.empty()) throw std::invalid_argument("unknown format: " + fmt);
  std::string s;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s += weight_to_string(it->first) + " " + std::to_string(it->second) + "\n";
  return s;
}

int report_result(const Job& job, const Report& rep, const std::string& subject, const std::string& name) {
  emit(job.output, name, io::dump(io::report_to_json(rep, subject)));
  return rep.passed() ? kOk : kFailed;
}

int do_build(const Job& job) {
  const RootSystem rs = job_root_system(job);
  const GroundRing ring = GroundRing::parse(job.ring);
  const Weight lambda = job_weight(job, rs);
  BuildOptions opt;
  opt.prune = !job.no_prune;
  opt.height_bound = job.height_bound;
  opt.verify_frontier = job.verify_frontier;
  if (!job.explicit_weights.empty()) {
    std::vector<Weight> ws;
    for (const auto& w : split(job.explicit_weights, ';')) ws.push_back(parse_weight(w));
    opt.explicit_weights = ws;
  }
  if (!opt.prune && !opt.height_bound && !opt.explicit_weights)
    throw std::invalid_argument("--no-prune needs --height-bound");
  const std::string base = job.variant + "_" + sanitize(rs.label().empty() ? "cartan" : rs.label()) + "_" +
                           sanitize(ring.descriptor()) + "_" + sanitize(job.weight);
  try {
    if (job.variant == "smin" || job.variant == "smax") {
      const XObject m = job.variant == "smin" ? build_smin(rs, ring, lambda, opt) : build_smax(rs, ring, lambda, opt);
      emit(job.output, base + ".json", io::dump(io::object_to_json(m)));
      return kOk;
    }
    if (job.variant == "smax-form") {
      if (opt.explicit_weights || !opt.prune) throw std::invalid_argument("smax-form builds use the full pruned weight set");
      const auto [m, b] = build_smax_with_form(rs, ring, lambda);
      emit(job.output, base + ".json", io::dump(io::object_to_json(m)));
      std::string form_path = job.form_output;
      if (form_path.empty() && !job.output.empty()) {
        const std::filesystem::path p(job.output);
        form_path = (p.parent_path() / (p.stem().string() + ".form.json")).string();
      }
      emit(form_path, base + ".form.json", io::dump(io::form_to_json(m, b)));
      return kOk;
    }
  } catch (const std::domain_error& e) {
    throw EngineError(e.what());
  } catch (const std::runtime_error& e) {
    throw EngineError(e.what());
  }
  throw std::invalid_argument("build variant must be smin, smax or smax-form");
}

int do_check(const Job& job, bool relations) {
  const std::string path = input(job, 0, "object");
  const XObject m = load_object(path);
  const Report rep = relations ? verify_relations(m) : check_axioms(m);
  return report_result(job, rep, path, stem(path) + (relations ? ".relations.json" : ".axioms.json"));
}

int do_character(const Job& job, bool mults) {
  const std::string path = input(job, 0, "object");
  const XObject m = load_object(path);
  Character c;
  if (mults) {
    try {
      c = weyl_multiplicities(m);
    } catch (const std::domain_error& e) {
      throw EngineError(e.what());
    }
  } else {
    c = character(m);
  }
  const std::string kind = mults ? "weyl-multiplicities" : "character";
  const std::string ext = job.format == "json" ? ".json" : job.format == "csv" ? ".csv" : ".txt";
  emit(job.output, stem(path) + "." + kind + ext, format_character(c, m.rs().rank(), kind, job.format));
  return kOk;
}

int do_weyl_char(const Job& job) {
  const RootSystem rs = job_root_system(job);
  const Weight lambda = job_weight(job, rs);
  if (!rs.is_dominant(lambda)) throw std::invalid_argument("weyl-char needs a dominant weight");
  const std::string ext = job.format == "json" ? ".json" : job.format == "csv" ? ".csv" : ".txt";
  emit(job.output, "weyl_" + sanitize(rs.label()) + "_" + sanitize(job.weight) + ext,
       format_character(weyl_character(rs, lambda), rs.rank(), "weyl-character", job.format));
  return kOk;
}

int do_form_check(const Job& job) {
  const std::string path = input(job, 0, "object");
  const XObject m = load_object(path);
  const GradedForm b = io::form_from_json(io::parse_json(io::read_file(input(job, 1, "form"))), m);
  return report_result(job, check_form(m, b), path, stem(path) + ".form-check.json");
}

int do_hom_extend(const Job& job) {
  const std::string spath = input(job, 0, "source object"), tpath = input(job, 1, "target object");
  const XObject src = load_object(spath), dst = load_object(tpath);
  if (src.ring() != dst.ring() || src.rs() != dst.rs())
    throw std::invalid_argument("source and target differ in ring or root system");
  HomMap seed;
  if (!job.seed.empty()) {
    seed = io::hom_from_json(io::parse_json(io::read_file(job.seed)), src.ring());
  } else {
    if (src.region().empty()) throw std::invalid_argument("empty source object");
    const Weight& top = src.region().front();
    if (src.rank(top) != dst.rank(top)) throw std::invalid_argument("top weight ranks differ; supply --seed");
    seed[top] = Mat::identity(src.ring(), src.rank(top));
  }
  const std::string name = stem(spath) + "_to_" + stem(tpath) + ".hom.json";
  std::string why;
  const auto f = extend_hom(seed, src, dst, &why);
  if (!f) {
    Report rep;
    rep.add("hom-extend", src.region().front(), false, why);
    return report_result(job, rep, spath + " -> " + tpath, name);
  }
  const Report mor = check_morphism(*f, src, dst);
  if (!mor.passed()) return report_result(job, mor, spath + " -> " + tpath, name);
  const bool iso = is_isomorphism(*f, src, dst);
  emit(job.output, name, io::dump(io::hom_to_json(*f, src, dst, iso)));
  return job.require_iso && !iso ? kFailed : kOk;
}

int execute(const Job& job) {
  if (job.command == "build") return do_build(job);
  if (job.command == "check") return do_check(job, false);
  if (job.command == "verify") return do_check(job, true);
  if (job.command == "character") return do_character(job, false);
  if (job.command == "weyl-mults") return do_character(job, true);
  if (job.command == "weyl-char") return do_weyl_char(job);
  if (job.command == "form-check") return do_form_check(job);
  if (job.command == "hom-extend") return do_hom_extend(job);
  throw std::invalid_argument("unknown command: " + job.command);
}

/// Job file: one JSON object whose keys mirror the command-line flags.
Job job_from_json(const Json& j) {
  static const std::vector<std::string> keys = {"command", "variant", "root", "cartan", "ring", "weight", "prune",
                                                "height_bound", "verify_frontier", "explicit_weights", "inputs",
                                                "output", "form_output", "format", "seed", "require_iso"};
  if (!j.is_object()) throw std::invalid_argument("job: expected an object");
  for (const auto& [k, v] : j.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw std::invalid_argument("job: unknown key \"" + k + "\"");
  if (!j.contains("command")) throw std::invalid_argument("job: missing key \"command\"");
  auto str = [&](const char* k, std::string& out) {
    if (!j.contains(k)) return;
    if (!j[k].is_string()) throw std::invalid_argument(std::string("job.") + k + ": expected a string");
    out = j[k].get<std::string>();
  };
  auto flag = [&](const char* k, bool& out) {
    if (!j.contains(k)) return;
    if (!j[k].is_boolean()) throw std::invalid_argument(std::string("job.") + k + ": expected a boolean");
    out = j[k].get<bool>();
  };
  auto weight_text = [&](const Json& w) {
    if (!w.is_array()) throw std::invalid_argument("job: weights are integer arrays");
    std::string s;
    for (const auto& x : w) {
      if (!x.is_number_integer()) throw std::invalid_argument("job: weights are integer arrays");
      s += (s.empty() ? "" : ",") + std::to_string(x.get<long>());
    }
    if (s.empty()) throw std::invalid_argument("job: empty weight");
    return s;
  };
  Job job;
  str("command", job.command);
  if (job.command == "run") throw std::invalid_argument("job: nested run");
  str("variant", job.variant);
  str("root", job.root);
  str("ring", job.ring);
  str("output", job.output);
  str("form_output", job.form_output);
  str("format", job.format);
  str("seed", job.seed);
  flag("verify_frontier", job.verify_frontier);
  flag("require_iso", job.require_iso);
  if (j.contains("prune")) {
    bool prune = true;
    flag("prune", prune);
    job.no_prune = !prune;
  }
  if (j.contains("height_bound")) {
    if (!j["height_bound"].is_number_integer()) throw std::invalid_argument("job.height_bound: expected an integer");
    job.height_bound = j["height_bound"].get<long>();
  }
  if (j.contains("weight")) job.weight = weight_text(j["weight"]);
  if (j.contains("cartan")) {
    if (!j["cartan"].is_array()) throw std::invalid_argument("job.cartan: expected an array of rows");
    for (const auto& row : j["cartan"]) job.cartan += (job.cartan.empty() ? "" : ";") + weight_text(row);
  }
  if (j.contains("explicit_weights")) {
    if (!j["explicit_weights"].is_array()) throw std::invalid_argument("job.explicit_weights: expected an array");
    for (const auto& w : j["explicit_weights"])
      job.explicit_weights += (job.explicit_weights.empty() ? "" : ";") + weight_text(w);
  }
  if (j.contains("inputs")) {
    if (!j["inputs"].is_array()) throw std::invalid_argument("job.inputs: expected an array of paths");
    for (const auto& p : j["inputs"]) {
      if (!p.is_string()) throw std::invalid_argument("job.inputs: expected an array of paths");
      job.inputs.push_back(p.get<std::string>());
    }
  }
  return job;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const EngineError& e) {
    Report rep;
    rep.add("error", {}, false, e.what());
    std::cout << io::dump(io::report_to_json(rep, "engine"));
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

void add_system_flags(CLI::App* c, Job& job) {
  c->add_option("--root", job.root, "Root system label, e.g. A2, B2, G2");
  c->add_option("--cartan", job.cartan, "Cartan matrix rows separated by ';', entries by ','");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tilting-module objects over local rings: build, check and compare"};
  app.require_subcommand(1);
  Job job;
  std::string job_file;

  auto* build = app.add_subcommand("build", "Build S_min, S_max or S_max with a contravariant form");
  build->add_option("variant", job.variant, "smin | smax | smax-form")->required()->check(CLI::IsMember({"smin", "smax", "smax-form"}));
  add_system_flags(build, job);
  build->add_option("--ring", job.ring, "generic | rational | cyc:<l> | int:<p>");
  build->add_option("--weight", job.weight, "Highest weight, comma-separated fundamental coordinates")->required();
  build->add_flag("--no-prune", job.no_prune, "Use every weight below lambda up to --height-bound");
  build->add_option("--height-bound", job.height_bound, "Height cut-off for --no-prune");
  build->add_flag("--verify-frontier", job.verify_frontier, "Check that the weights just below the hull have rank 0");
  build->add_option("--weights", job.explicit_weights, "Explicit closed weight set, weights separated by ';'");
  build->add_option("-o,--output", job.output, "Object file");
  build->add_option("--form-output", job.form_output, "Form file (smax-form)");

  struct Unary {
    const char* name;
    const char* help;
    bool has_format;
  };
  for (const Unary& u : {Unary{"check", "Check the axioms of an object file", false},
                         Unary{"verify", "Verify the module relations of an object file", false},
                         Unary{"character", "Ranks of the weight spaces", true},
                         Unary{"weyl-mults", "Weyl filtration multiplicities", true}}) {
    auto* c = app.add_subcommand(u.name, u.help);
    c->add_option("object", job.inputs, "Object file")->required()->expected(1);
    c->add_option("-o,--output", job.output, "Output file");
    if (u.has_format) c->add_option("--format", job.format, "text | json | csv")->check(CLI::IsMember({"text", "json", "csv"}));
  }

  auto* wc = app.add_subcommand("weyl-char", "Characteristic-zero Weyl character (Freudenthal)");
  add_system_flags(wc, job);
  wc->add_option("--weight", job.weight, "Dominant weight")->required();
  wc->add_option("--format", job.format, "text | json | csv")->check(CLI::IsMember({"text", "json", "csv"}));
  wc->add_option("-o,--output", job.output, "Output file");

  auto* fc = app.add_subcommand("form-check", "Check a contravariant form on an object");
  fc->add_option("files", job.inputs, "Object file and form file")->required()->expected(2);
  fc->add_option("-o,--output", job.output, "Report file");

  auto* he = app.add_subcommand("hom-extend", "Extend a morphism from the top weight downwards");
  he->add_option("files", job.inputs, "Source and target object files")->required()->expected(2);
  he->add_option("--seed", job.seed, "Hom file with the starting maps (default: identity at the top weight)");
  he->add_flag("--require-iso", job.require_iso, "Exit 1 unless the extension is an isomorphism");
  he->add_option("-o,--output", job.output, "Hom file");

  auto* run = app.add_subcommand("run", "Run a JSON job file");
  run->add_option("job", job_file, "Job file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (run->parsed()) return guarded([&] { return execute(job_from_json(io::parse_json(io::read_file(job_file)))); });
  job.command = app.get_subcommands().front()->get_name();
  return guarded([&] { return execute(job); });
}

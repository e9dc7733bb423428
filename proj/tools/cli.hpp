#pragma once

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <braidnt/classifier.hpp>
#include <braidnt/random.hpp>

namespace braidnt::cli {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json curve_json(const RoundCurve& c) { return json::array({c.lo, c.hi}); }

inline std::vector<std::string> grid_rows(const Labelling& lab) {
  std::vector<std::string> rows;
  for (const auto& row : lab.grid) {
    std::string s;
    for (Label l : row) s += label_char(l);
    rows.push_back(s);
  }
  return rows;
}

inline json witness_json(const ReductionWitness& w) {
  if (const auto* r = std::get_if<RoundFamilyWitness>(&w)) {
    json orbits = json::array();
    for (const RoundOrbit& o : r->family.orbits) {
      json jo = json::array();
      for (const RoundCurve& c : o) jo.push_back(curve_json(c));
      orbits.push_back(jo);
    }
    return {{"kind", "round-family"}, {"orbits", orbits}, {"overlapping", r->family.overlapping},
            {"power", r->power}, {"subject", to_string(r->subject)}};
  }
  const auto& a = std::get<AlmostRoundWitness>(w);
  return {{"kind", "almost-round"},
          {"pair", json::array({a.p, a.q})},
          {"enclosed", a.enclosed},
          {"unlabelled", a.unlabelled},
          {"labelling", grid_rows(a.labelling)},
          {"power", a.power},
          {"variant", a.variant == 0 ? "Delta^-inf beta^k" : "beta^-k Delta^sup"},
          {"braid", to_string(a.braid)},
          {"subject", to_string(a.subject)}};
}

inline std::string witness_text(const ReductionWitness& w) {
  std::ostringstream os;
  if (const auto* r = std::get_if<RoundFamilyWitness>(&w)) {
    os << "round family, power " << r->power << (r->family.overlapping ? ", overlapping" : "") << ":";
    for (const RoundOrbit& o : r->family.orbits) {
      os << " {";
      for (std::size_t i = 0; i < o.size(); ++i) os << (i ? " " : "") << to_string(o[i]);
      os << "}";
    }
    os << "\n";
    return os.str();
  }
  const auto& a = std::get<AlmostRoundWitness>(w);
  os << "almost round, power " << a.power << ", pair (" << a.p << "," << a.q << "), enclosed {";
  for (std::size_t i = 0; i < a.enclosed.size(); ++i) os << (i ? "," : "") << a.enclosed[i];
  os << "}\n";
  os << "positive braid: " << to_string(a.braid) << "\n";
  os << "labelling (time x strand):\n";
  for (const std::string& row : grid_rows(a.labelling)) os << "  " << row << "\n";
  return os.str();
}

inline json stats_json(const ClassifierStats& s) {
  return {{"slidings", s.slidings},
          {"stabilization_stages", s.stabilization_stages},
          {"powers_examined", s.powers_examined},
          {"rigid_case_calls", s.rigid_case_calls}};
}

inline json classification_json(const std::string& input, int n, const Classification& c) {
  json j{{"input", input}, {"n", n}, {"verdict", c.name()}};
  if (const auto* p = std::get_if<PeriodicCertificate>(&c.verdict)) {
    j["witness"] = {{"k", p->k}, {"d", p->d}};
  } else if (const auto* r = std::get_if<ReducibleCertificate>(&c.verdict)) {
    json w = witness_json(r->witness);
    w["stage"] = to_string(r->stage);
    w["m"] = r->m;
    w["y"] = to_string(r->y);
    w["conjugator"] = to_string(r->conjugator);
    j["witness"] = w;
  } else {
    const auto& a = std::get<PseudoAnosovAudit>(c.verdict);
    j["witness"] = {{"cap", a.cap},
                    {"powers_examined", a.powers_examined},
                    {"decided_at", a.decided_at ? json(*a.decided_at) : json(nullptr)},
                    {"heuristic", a.heuristic}};
  }
  j["stats"] = stats_json(c.stats);
  return j;
}

inline std::string classification_text(const Classification& c) {
  std::ostringstream os;
  os << c.name();
  if (const auto* p = std::get_if<PeriodicCertificate>(&c.verdict)) {
    os << ": x^" << p->k << " = D^" << p->d << "\n";
  } else if (const auto* r = std::get_if<ReducibleCertificate>(&c.verdict)) {
    os << ": stage " << to_string(r->stage);
    if (r->m) os << ", m = " << r->m;
    os << "\n" << witness_text(r->witness);
  } else {
    const auto& a = std::get<PseudoAnosovAudit>(c.verdict);
    os << ": " << a.powers_examined << " powers examined";
    if (a.decided_at) os << ", settled at m = " << *a.decided_at;
    os << "\n";
    if (a.heuristic) os << "warning: cap " << a.cap << " is below the proven bound; verdict is heuristic\n";
  }
  return os.str();
}

// Cap from --cap, else BRAIDNT_CAP, else the proven bound.
inline ClassifierConfig make_config(std::optional<int> cap) {
  ClassifierConfig cfg;
  if (cap) {
    if (*cap < 1) throw UsageError("--cap must be at least 1");
    cfg.cap = cap;
  } else if (const char* env = std::getenv("BRAIDNT_CAP")) {
    int v = 0;
    if (!detail::parse_int(env, v) || v < 1) throw UsageError("BRAIDNT_CAP must be a positive integer");
    cfg.cap = v;
  }
  return cfg;
}

inline std::string joined(const std::vector<std::string>& parts) {
  std::string text;
  for (const std::string& p : parts) text += (text.empty() ? "" : " ") + p;
  return text;
}

inline GeneratorWord read_word(const std::vector<std::string>& parts, int n) {
  if (n < 2 || n > kMaxStrands) throw UsageError("-n must be between 2 and " + std::to_string(kMaxStrands));
  return parse_word(joined(parts), n);
}

struct BatchLine {
  std::string input;
  std::string output;
  int status = 0;  // exit code contribution: 2 parse error, 1 internal
};

// Header "n=<k>" (or "n <k>"), then one word per line; blank lines and lines
// starting with # are skipped.
inline int run_batch(std::istream& in, std::ostream& out, std::ostream& err, bool as_json,
                     const ClassifierConfig& cfg, unsigned jobs) {
  std::string line;
  int n = 0;
  std::vector<BatchLine> lines;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::string body = line.substr(first);
    while (!body.empty() && (body.back() == '\r' || body.back() == ' ' || body.back() == '\t')) body.pop_back();
    if (n == 0) {
      if (body.rfind("n", 0) != 0) throw UsageError("batch input must start with a header line 'n=<strands>'");
      std::string v = body.substr(1);
      v.erase(0, v.find_first_not_of(" =\t"));
      if (!detail::parse_int(v, n) || n < 2 || n > kMaxStrands) throw UsageError("bad batch header '" + body + "'");
      continue;
    }
    lines.push_back({body, "", 0});
  }
  if (n == 0) throw UsageError("batch input must start with a header line 'n=<strands>'");

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < lines.size(); i = next++) {
      BatchLine& b = lines[i];
      try {
        CanonicalBraid x = normal_form(parse_word(b.input, n));
        Classification c = classify(x, cfg);
        b.output = as_json ? classification_json(b.input, n, c).dump() : b.input + "\t" + c.name();
      } catch (const std::exception& e) {
        bool parse = dynamic_cast<const MalformedInput*>(&e) != nullptr;
        b.status = parse ? 2 : 1;
        b.output = as_json ? json{{"input", b.input}, {"n", n}, {"error", e.what()}}.dump()
                           : b.input + "\terror: " + e.what();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, lines.size()))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  bool internal = false, parse = false;
  for (const BatchLine& b : lines) {
    out << b.output << "\n";
    internal = internal || b.status == 1;
    parse = parse || b.status == 2;
  }
  if (internal) err << "internal error on some batch lines\n";
  if (parse) err << "some batch lines could not be parsed\n";
  return internal ? 1 : parse ? 2 : 0;
}

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Garside normal forms, cyclic sliding and Nielsen-Thurston classification of braids", "braidnt"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  int n = 0;
  std::vector<std::string> parts;
  bool as_json = false;
  std::optional<int> cap;
  std::optional<unsigned long long> seed;
  int length = 10, count = 1;
  bool positive = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string file;

  auto word_sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("-n,--strands", n, "number of strands")->required();
    s->add_option("word", parts, "braid word, e.g. \"s1 s2^-1 D\"")->required();
    s->add_flag("--json", as_json, "machine-readable output");
    return s;
  };
  CLI::App* nf_cmd = word_sub("nf", "left normal form");
  CLI::App* classify_cmd = word_sub("classify", "periodic / reducible / pseudo-Anosov");
  classify_cmd->add_option("--cap", cap, "stabilization cap N (default ||D||^3-||D||^2, or BRAIDNT_CAP)");
  CLI::App* slide_cmd = word_sub("slide", "one cyclic sliding");
  CLI::App* circuit_cmd = word_sub("circuit", "iterated sliding up to the first repetition");
  CLI::App* rigidity_cmd = word_sub("rigidity", "rigidity of the normal form");
  CLI::App* curves_cmd = word_sub("curves", "invariant families of round curves");
  CLI::App* reduce_cmd = word_sub("reduce", "almost round invariant curve of a positive word, or rigid case of a rigid braid");

  CLI::App* random_cmd = app.add_subcommand("random", "random braid words");
  random_cmd->add_option("-n,--strands", n, "number of strands")->required();
  random_cmd->add_option("-l,--length", length, "word length")->check(CLI::NonNegativeNumber);
  random_cmd->add_option("--seed", seed, "random seed")->required();
  random_cmd->add_option("--count", count, "number of words")->check(CLI::PositiveNumber);
  random_cmd->add_flag("--positive", positive, "positive letters only");

  CLI::App* batch_cmd = app.add_subcommand("batch", "classify one word per line; first line 'n=<strands>'");
  batch_cmd->add_option("file", file, "input file (default: standard input)");
  batch_cmd->add_flag("--json", as_json, "one JSON object per line");
  batch_cmd->add_option("--cap", cap, "stabilization cap N");
  batch_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> rev_args(args.rbegin(), args.rend());
  try {
    app.parse(rev_args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*batch_cmd) {
      ClassifierConfig cfg = make_config(cap);
      if (file.empty()) return run_batch(in, out, err, as_json, cfg, jobs);
      std::ifstream f(file);
      if (!f) throw UsageError("cannot open " + file);
      return run_batch(f, out, err, as_json, cfg, jobs);
    }
    if (*random_cmd) {
      if (n < 2 || n > kMaxStrands) throw UsageError("-n must be between 2 and " + std::to_string(kMaxStrands));
      Rng rng(*seed);
      for (int i = 0; i < count; ++i) {
        GeneratorWord w = random_word(n, length, rng, positive);
        if (as_json) out << json{{"n", n}, {"word", to_string(w)}}.dump() << "\n";
        else out << to_string(w) << "\n";
      }
      return 0;
    }

    GeneratorWord word = read_word(parts, n);
    std::string input = joined(parts);
    CanonicalBraid x = normal_form(word);
    json j{{"input", input}, {"n", n}};

    if (*nf_cmd) {
      json factors = json::array();
      for (const SimpleBraid& s : x.factors()) factors.push_back(s.word());
      j.update({{"normal_form", to_string(x)}, {"inf", x.inf()}, {"sup", x.sup()}, {"length", x.canonical_length()},
                {"factors", factors}});
      if (as_json) out << j.dump() << "\n";
      else out << to_string(x) << "\n";
    } else if (*classify_cmd) {
      Classification c = classify(x, make_config(cap));
      if (as_json) out << classification_json(input, n, c).dump() << "\n";
      else out << classification_text(c);
    } else if (*slide_cmd) {
      auto [sx, p] = cyclic_sliding(x);
      j.update({{"slid", to_string(sx)}, {"prefix", p.word()}});
      if (as_json) out << j.dump() << "\n";
      else out << to_string(sx) << "\nprefix: " << to_string(CanonicalBraid::from_simple(p)) << "\n";
    } else if (*circuit_cmd) {
      SlidingTrajectory tr = sliding_trajectory(x);
      json tail = json::array(), circ = json::array();
      for (const SlidingStep& s : tr.tail) tail.push_back(to_string(s.element));
      for (const SlidingStep& s : tr.circuit) circ.push_back(to_string(s.element));
      j.update({{"tail", tail}, {"circuit", circ}, {"t", tr.t},
                {"conjugator", to_string(preferred_conjugator(x))}});
      if (as_json) {
        out << j.dump() << "\n";
      } else {
        for (const auto& s : tail) out << "tail: " << s.get<std::string>() << "\n";
        for (const auto& s : circ) out << "circuit: " << s.get<std::string>() << "\n";
        out << "P: " << j["conjugator"].get<std::string>() << "\n";
      }
    } else if (*rigidity_cmd) {
      bool rigid = is_rigid(x);
      if (x.factors().empty()) {
        j.update({{"rigidity", nullptr}, {"rigid", rigid}, {"two_sided", true}});
        if (as_json) out << j.dump() << "\n";
        else out << "rigidity undefined (canonical length 0)\nrigid: yes\n";
      } else {
        Rigidity r = rigidity(x);
        bool two = has_two_sided_rigidity(x);
        j.update({{"rigidity", json::array({r.k, r.r})}, {"rigid", rigid}, {"two_sided", two}});
        if (as_json) out << j.dump() << "\n";
        else out << "rigidity " << r.k << "/" << r.r << "\nrigid: " << (rigid ? "yes" : "no")
                 << "\ntwo-sided: " << (two ? "yes" : "no") << "\n";
      }
    } else if (*curves_cmd) {
      json fams = json::array();
      for (const RoundFamily& f : invariant_round_families(x)) fams.push_back(witness_json(RoundFamilyWitness{f, 1, x}));
      j["families"] = fams;
      if (as_json) {
        out << j.dump() << "\n";
      } else if (fams.empty()) {
        out << "no invariant round curves\n";
      } else {
        for (const RoundFamily& f : invariant_round_families(x)) out << witness_text(RoundFamilyWitness{f, 1, x});
      }
    } else if (*reduce_cmd) {
      std::optional<ReductionWitness> w;
      if (word.is_positive()) {
        if (auto a = almost_round_invariant_arc(word)) w = *a;
      } else if (is_rigid(x) && !x.factors().empty()) {
        w = rigid_case_classify(x);
      } else {
        throw UsageError("reduce needs a positive word or a rigid braid that is not a power of D");
      }
      j["witness"] = w ? witness_json(*w) : json(nullptr);
      if (as_json) out << j.dump() << "\n";
      else out << (w ? witness_text(*w) : std::string("no witness\n"));
    }
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const MalformedInput& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const StrandMismatch& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace braidnt::cli

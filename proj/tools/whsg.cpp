#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "whsg/whsg.hpp"

namespace {

using nlohmann::ordered_json;
using whsg::Sym;
using whsg::Word;

ordered_json word_json(const std::vector<std::string>& alphabet, const Word& w) {
  auto out = ordered_json::array();
  for (Sym x : w) {
    if (x == whsg::kSep1) out.push_back(whsg::kSep1Name);
    else if (x == whsg::kSep2) out.push_back(whsg::kSep2Name);
    else out.push_back(alphabet.at(x));
  }
  return out;
}

ordered_json verdict_json(const std::vector<std::string>& alphabet, const whsg::Verdict& v) {
  ordered_json out;
  out["answer"] = v.answer ? "yes" : "no";
  ordered_json w = ordered_json::object();
  for (const auto& [label, word] : v.witnesses) w[label] = word_json(alphabet, word);
  out["witnesses"] = w;
  out["reason"] = v.reason;
  return out;
}

ordered_json boolean_json(bool value, std::string reason) {
  ordered_json out;
  out["answer"] = value ? "true" : "false";
  out["witnesses"] = ordered_json::object();
  out["reason"] = std::move(reason);
  return out;
}

ordered_json error_json(const std::string& kind, const std::string& message) {
  ordered_json out;
  out["error"] = kind;
  out["message"] = message;
  return out;
}

struct Settings {
  std::string structure;
  std::string table;
  std::string grammar;
  std::string output;
  std::vector<std::string> operands;
  std::string first, second;
  std::string relation = "R";
  std::size_t depth = 4;
  std::uint64_t max_species = 10000;
  std::size_t max_alphabet_clifford = 4;
  std::size_t defect_witness_length = 12;
};

whsg::WhStructure load(const Settings& cfg) {
  if (cfg.structure.empty()) throw whsg::Error(whsg::ErrorKind::parse, "no structure file given");
  return whsg::load_structure_file(cfg.structure);
}

ordered_json run(const std::string& command, const Settings& cfg) {
  if (command == "from-table") {
    const auto t = whsg::load_table_file(cfg.table);
    const auto s = whsg::structure_from_table(t);
    if (!cfg.output.empty()) whsg::save_structure_file(s, cfg.output);
    ordered_json out = whsg::structure_to_json(s);
    ordered_json r;
    r["answer"] = "yes";
    r["witnesses"] = ordered_json::object();
    r["reason"] = "structure with " + std::to_string(t.size()) + " representatives";
    r["structure"] = out;
    return r;
  }
  if (command == "defect-check") {
    std::ifstream in(cfg.grammar);
    if (!in) throw whsg::Error(whsg::ErrorKind::parse, "cannot open " + cfg.grammar);
    nlohmann::json j;
    std::vector<std::string> alphabet;
    whsg::Cfg g;
    try {
      j = nlohmann::json::parse(in);
      for (const auto& x : j.at("alphabet")) alphabet.push_back(x.get<std::string>());
      g = whsg::grammar_from_json(j.at("grammar"), [&](const std::string& n) -> Sym {
        for (std::size_t i = 0; i < alphabet.size(); ++i)
          if (alphabet[i] == n) return static_cast<Sym>(i);
        throw whsg::Error(whsg::ErrorKind::unknown_symbol, "'" + n + "'");
      });
    } catch (const nlohmann::json::exception& e) {
      throw whsg::Error(whsg::ErrorKind::parse, e.what());
    }
    for (const auto& n : alphabet)
      if (n == whsg::kSep1Name || n == whsg::kSep2Name)
        throw whsg::Error(whsg::ErrorKind::reserved_symbol, "'" + n + "' in alphabet");
    auto defect = whsg::palindromic_defect(g, cfg.defect_witness_length);
    if (!defect) return boolean_json(false, "every word reads x #2 x^rev");
    auto out = boolean_json(true, defect->certificate);
    if (defect->witness) out["witnesses"]["defect"] = word_json(alphabet, *defect->witness);
    return out;
  }

  const auto s = load(cfg);
  const auto& names = s.alphabet;
  if (command == "validate") return verdict_json(names, whsg::validate_necessary(s, cfg.depth));
  if (command == "normalize") {
    const auto n = whsg::normalize_generators(s);
    if (!cfg.output.empty()) whsg::save_structure_file(n, cfg.output);
    ordered_json r;
    r["answer"] = "yes";
    r["witnesses"] = ordered_json::object();
    r["reason"] = "letters embedded in the representatives";
    r["structure"] = whsg::structure_to_json(n);
    return r;
  }
  if (command == "multiply") {
    const Word r = whsg::multiply(s, s.word(cfg.first), s.word(cfg.second));
    return verdict_json(names, whsg::Verdict::yes("shortest-lex product representative").with("product", r));
  }
  if (command == "represent") {
    std::unique_ptr<whsg::WhStructure> holder;
    const auto& n = whsg::normalized(s, holder);
    const Word r = whsg::represent(n, s.word(cfg.first));
    return verdict_json(names, whsg::Verdict::yes("representative in L").with("representative", r));
  }
  if (command == "word-eq") {
    const bool eq = whsg::word_eq(s, s.word(cfg.first), s.word(cfg.second));
    return boolean_json(eq, eq ? "same element" : "different elements");
  }
  if (command == "green") {
    whsg::Green rel;
    if (cfg.relation == "R") rel = whsg::Green::R;
    else if (cfg.relation == "L") rel = whsg::Green::L;
    else if (cfg.relation == "H") rel = whsg::Green::H;
    else throw whsg::Error(whsg::ErrorKind::parse, "relation must be R, L or H");
    const bool related = whsg::green_related(s, s.word(cfg.first), s.word(cfg.second), rel);
    return boolean_json(related, std::string(related ? "" : "not ") + cfg.relation + "-related");
  }
  if (command == "is-monoid") return verdict_json(names, whsg::is_monoid(s));
  if (command == "is-group") return verdict_json(names, whsg::is_group(s));
  if (command == "is-commutative") return verdict_json(names, whsg::is_commutative(s));
  if (command == "is-completely-simple") return verdict_json(names, whsg::is_completely_simple(s, cfg.max_species));
  if (command == "is-clifford") return verdict_json(names, whsg::is_clifford(s, cfg.max_alphabet_clifford));
  if (command == "is-free") return verdict_json(names, whsg::is_free(s, cfg.defect_witness_length));
  throw whsg::Error(whsg::ErrorKind::parse, "unknown subcommand '" + command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedures for word-hyperbolic semigroup structures"};
  app.require_subcommand(1);
  Settings cfg;
  bool json_flag = true;
  app.add_flag("--json", json_flag, "JSON report (the only format)");
  app.add_option("--max-species", cfg.max_species, "cap on completely simple species")->capture_default_str();
  app.add_option("--max-alphabet-clifford", cfg.max_alphabet_clifford, "largest alphabet for the Clifford search")
      ->capture_default_str();
  app.add_option("--defect-witness-length", cfg.defect_witness_length, "longest defect witness searched")
      ->capture_default_str();

  // the structure path is the first positional unless --structure names it
  std::map<std::string, std::size_t> operand_count;
  auto with_structure = [&](CLI::App* sub, std::size_t operands = 0, const std::string& names = "") {
    sub->add_option("operands", cfg.operands, names.empty() ? "structure file" : "structure file, then " + names);
    sub->add_option("--structure", cfg.structure, "structure file");
    sub->fallthrough();
    operand_count[sub->get_name()] = operands;
    return sub;
  };
  auto* validate = with_structure(app.add_subcommand("validate", "check decidable necessary conditions"));
  validate->add_option("--depth", cfg.depth, "sample bound")->capture_default_str()->check(CLI::PositiveNumber);
  with_structure(app.add_subcommand("normalize", "embed the letters in the representatives"))
      ->add_option("--output,-o", cfg.output, "write the structure here");
  with_structure(app.add_subcommand("multiply", "product representative"), 2, "two representatives");
  with_structure(app.add_subcommand("word-eq", "element equality"), 2, "two words");
  with_structure(app.add_subcommand("represent", "representative of a word"), 1, "a word");
  auto* green = with_structure(app.add_subcommand("green", "Green's R, L or H relation between representatives"), 2,
                               "two representatives");
  green->add_option("--relation,-r", cfg.relation, "R, L or H")->capture_default_str();
  for (const char* name : {"is-monoid", "is-group", "is-commutative", "is-completely-simple", "is-clifford", "is-free"})
    with_structure(app.add_subcommand(name, "decide a property"));
  auto* from_table = app.add_subcommand("from-table", "structure from a multiplication table");
  from_table->add_option("table", cfg.table, "table file")->required();
  from_table->add_option("--output,-o", cfg.output, "write the structure here");
  from_table->fallthrough();
  auto* defect = app.add_subcommand("defect-check", "look for x #2 y with y not the reverse of x");
  defect->add_option("grammar", cfg.grammar, "grammar file")->required();
  defect->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << error_json("usage", e.what()).dump(2) << "\n";
    return 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (auto it = operand_count.find(command); it != operand_count.end()) {
    auto& ops = cfg.operands;
    if (cfg.structure.empty() && !ops.empty()) {
      cfg.structure = ops.front();
      ops.erase(ops.begin());
    }
    if (ops.size() != it->second) {
      std::cout << error_json("usage", command + " expects " + std::to_string(it->second) + " operand(s) after the structure")
                       .dump(2)
                << "\n";
      return 1;
    }
    if (ops.size() > 0) cfg.first = ops[0];
    if (ops.size() > 1) cfg.second = ops[1];
  }
  const auto started = std::chrono::steady_clock::now();
  try {
    ordered_json report = run(command, cfg);
    report["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
    std::cout << report.dump(2) << "\n";
    return 0;
  } catch (const whsg::Error& e) {
    std::cout << error_json(whsg::to_string(e.kind()), e.what()).dump(2) << "\n";
    return e.kind() == whsg::ErrorKind::cap_exceeded ? 2 : 1;
  }
}

// orderlab: experiment runner over the order-space library.
//
//   orderlab solve --group cyclic:2 --class locally-invariant --radius 1
//   orderlab probe --group affine --oracle affine-dyn --g e --h "y^-1:(-1,1/2)" --window-words "e;(-2,1/8)"
//   orderlab verify orderlab_solve.json
//
// Exit status: 0 completed (including unsat / not found), 2 budget
// exhausted, 1 usage or input error, 3 verification failed.

#include <map>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "experiment.hpp"

namespace cli = orderlab::cli;

namespace {

struct Flags {
  std::string config_file;
  std::string group, cls, oracle, window_file, window_words, g, h, x, y, mode, out;
  int radius = 0, k = 0, N = 0, max_radius = 0;
  std::uint64_t budget = 0, limit = 0, samples = 0, seed = 0;
  bool timing = false;
};

void add_run_flags(CLI::App* sub, Flags& f) {
  sub->set_help_flag("--help", "print this help");  // frees -h; --h is the translation
  sub->add_option("--config", f.config_file, "JSON config file (flags override its fields)");
  sub->add_option("--group", f.group, "group: abelian:n, heis, free:k, klein, cyclic:k, affine, or products a*b");
  sub->add_option("--class", f.cls, "partial-order, total-order, left-invariant, bi-invariant, locally-invariant, conradian");
  sub->add_option("--oracle", f.oracle, "lex, norm, magnus, affine-dyn, affine-bi, cone:<file>");
  sub->add_option("--radius", f.radius, "window = Cayley ball of this radius");
  sub->add_option("--window-file", f.window_file, "window: one element per line, # comments");
  sub->add_option("--window-words", f.window_words, "window: ';'-separated elements");
  sub->add_option("--g", f.g, "left translation g");
  sub->add_option("--h", f.h, "right translation h");
  sub->add_option("--x", f.x, "Conradian probe x");
  sub->add_option("--y", f.y, "Conradian probe y");
  sub->add_option("--mode", f.mode, "probe path: general or shortcut");
  sub->add_option("--k", f.k, "coset chain half-length");
  sub->add_option("--N", f.N, "probe bound (default 64)");
  sub->add_option("--budget", f.budget, "solver decision-node budget");
  sub->add_option("--limit", f.limit, "witnesses kept by enumerate");
  sub->add_option("--max-radius", f.max_radius, "largest radius tried by obstruct");
  sub->add_option("--samples", f.samples, "identity-check sample count");
  sub->add_option("--seed", f.seed, "identity-check seed");
  sub->add_option("--out", f.out, "artifact path (default orderlab_<command>.json)");
  sub->add_flag("--timing", f.timing, "record wall_ms (artifact is then not byte-stable)");
}

cli::Config build_config(const std::string& command, const CLI::App& sub, const Flags& f) {
  cli::Config c;
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    if (!in) throw cli::UsageError("cannot read config file '" + f.config_file + "'");
    try {
      c = cli::config_from_json(cli::json::parse(in));
    } catch (const cli::json::exception& e) {
      throw cli::UsageError("bad config file: " + std::string(e.what()));
    }
    if (!c.command.empty() && c.command != command) throw cli::UsageError("config is for '" + c.command + "', not '" + command + "'");
  }
  c.command = command;
  auto given = [&](const char* name) { return sub.count(name) > 0; };
  if (given("--group")) c.group = f.group;
  if (given("--class")) c.cls = f.cls;
  if (given("--oracle")) c.oracle = f.oracle;
  if (given("--radius") || given("--window-file") || given("--window-words")) {
    c.radius.reset();
    c.window_file.reset();
    c.window_words.reset();
  }
  if (given("--radius")) c.radius = f.radius;
  if (given("--window-file")) c.window_file = f.window_file;
  if (given("--window-words")) c.window_words = cli::split_words(f.window_words);
  if (given("--g")) c.g = f.g;
  if (given("--h")) c.h = f.h;
  if (given("--x")) c.x = f.x;
  if (given("--y")) c.y = f.y;
  if (given("--mode")) c.mode = f.mode;
  if (given("--k")) c.k = f.k;
  if (given("--N")) c.N = f.N;
  if (given("--budget")) c.budget = f.budget;
  if (given("--limit")) c.limit = f.limit;
  if (given("--max-radius")) c.max_radius = f.max_radius;
  if (given("--samples")) c.samples = f.samples;
  if (given("--seed")) c.seed = f.seed;
  if (given("--out")) c.out = f.out;
  if (given("--timing")) c.timing = true;
  if (c.out.empty()) c.out = "orderlab_" + command + ".json";
  return c;
}

int run_command(const cli::Config& c) {
  const cli::RunResult r = cli::run(c);
  std::ofstream out(c.out, std::ios::binary);
  if (!out) throw cli::UsageError("cannot write '" + c.out + "'");
  out << cli::dump(r.artifact);
  std::cout << cli::format_summary(r) << "artifact   " << c.out << '\n';
  return r.exit;
}

int verify_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cli::UsageError("cannot read '" + path + "'");
  cli::json artifact;
  try {
    artifact = cli::json::parse(in);
  } catch (const cli::json::exception& e) {
    throw cli::UsageError("bad artifact: " + std::string(e.what()));
  }
  const cli::VerifyResult v = cli::verify(artifact);
  for (const auto& s : v.checks) std::cout << "ok    " << s << '\n';
  for (const auto& s : v.failures) std::cout << "FAIL  " << s << '\n';
  std::cout << (v.ok ? "verified " : "NOT verified ") << path << '\n';
  return v.ok ? cli::kOk : cli::kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orderlab: spaces of orders on finitely generated groups"};
  app.require_subcommand(1);
  Flags flags;
  std::vector<std::pair<std::string, CLI::App*>> subs;
  const std::map<std::string, std::string> blurbs{
      {"solve", "decide whether a window admits a relation of a class"},
      {"enumerate", "list the relations of a class on a window"},
      {"obstruct", "find the least ball radius with no relation of a class"},
      {"probe", "search for n with the orbit restriction back at the start"},
      {"conradian", "search for n with x y^n > y"},
      {"orbit", "sample orbit restrictions and their limit"},
      {"certify-prop41", "recurrence versus local-invariance checks for one oracle"},
      {"identity-check", "random telescoping-identity checks"}};
  for (const auto& name : cli::kCommands) {
    CLI::App* sub = app.add_subcommand(name, blurbs.at(name));
    add_run_flags(sub, flags);
    subs.emplace_back(name, sub);
  }
  std::string verify_path;
  CLI::App* verify = app.add_subcommand("verify", "replay a JSON artifact");
  verify->add_option("file", verify_path)->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsage;
  }
  try {
    if (verify->parsed()) return verify_file(verify_path);
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) return run_command(build_config(name, *sub, flags));
    }
  } catch (const orderlab::Error& e) {
    std::cerr << "orderlab: " << e.what() << '\n';
    return cli::kUsage;
  } catch (const cli::json::exception& e) {
    std::cerr << "orderlab: malformed artifact: " << e.what() << '\n';
    return cli::kUsage;
  }
  return cli::kUsage;
}

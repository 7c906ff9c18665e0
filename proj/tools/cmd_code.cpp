#include <algorithm>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "options.hpp"
#include "qldpc/error.hpp"
#include "qldpc/codes/constructions.hpp"
#include "qldpc/codes/distance.hpp"
#include "qldpc/tanner/subtrees.hpp"
#include "support.hpp"

namespace qldpc::cli {

using nlohmann::json;

namespace {

std::size_t declared_weight(const codes::CssCode& code) {
  if (code.metadata().stabilizer_weight) return *code.metadata().stabilizer_weight;
  const auto hist = code.row_weight_histogram();
  return hist.empty() ? 0 : hist.rbegin()->first;
}

struct BuildOpts {
  std::string code;
  std::size_t budget = 1000;
  std::uint64_t seed = 1;
  bool as_json = false;
};

int run_build(const BuildOpts& o) {
  LoadedCode loaded = load_code_file(o.code);
  codes::CssCode& code = loaded.code;
  if (o.budget > 0) code.set_distance(codes::distance_estimate(code, o.budget, o.seed));
  const auto hist = code.row_weight_histogram();
  if (o.as_json) {
    json hj = json::object();
    for (const auto& [w, count] : hist) hj[std::to_string(w)] = count;
    json out{{"n", code.n()},
             {"k", code.k()},
             {"w", declared_weight(code)},
             {"parameters", code.parameters()},
             {"family", codes::to_string(code.metadata().family)},
             {"row_weights", hj}};
    if (code.distance().kind != codes::DistanceKind::unknown) {
      out["distance"] = {{"bound", code.distance().to_string()}, {"value", code.distance().value}};
      if (code.distance().seed) out["distance"]["seed"] = *code.distance().seed;
    }
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  std::cout << code.parameters() << " w=" << declared_weight(code) << "\n";
  for (const auto& [w, count] : hist) std::cout << "  weight " << w << ": " << count << " rows\n";
  return kOk;
}

struct SearchOpts {
  std::size_t n = 0;
  std::size_t w = 0;
  std::size_t l_max = 1;
  std::size_t limit = 0;
  std::size_t threads = 1;
};

int run_search(const SearchOpts& o) {
  codes::UbSearchParams params;
  params.n = o.n;
  params.weight = o.w;
  params.l_max = o.l_max;
  params.limit = o.limit;
  params.threads = o.threads;
  std::cout << "a,l,n,k,rate,weight\n";
  codes::ub_search(params, [](const codes::UbSearchResult& r) {
    char rate[32];
    std::snprintf(rate, sizeof rate, "%.6f", r.rate);
    std::cout << '"' << gf2::format_exponents(r.a) << "\"," << r.l_exp << ',' << r.code.n() << ','
              << r.code.k() << ',' << rate << ',' << 2 * r.a.weight() << "\n";
    return true;
  });
  return kOk;
}

struct SubtreeOpts {
  std::string code;
  std::optional<std::uint64_t> seed;
  std::string perm;
  std::string check = "hz";
};

int run_subtrees(const SubtreeOpts& o) {
  const LoadedCode loaded = load_code_file(o.code);
  const gf2::BinaryMatrix& h = pick_check(loaded.code, o.check);
  const tanner::TannerGraph g(h);
  std::vector<std::size_t> pi;
  if (!o.perm.empty()) {
    pi = parse_index_list(read_file(o.perm));
    tanner::validate_permutation(pi, g.check_count());
  } else if (o.seed) {
    pi = tanner::random_permutation(g.check_count(), *o.seed);
  } else {
    pi = tanner::identity_permutation(g.check_count());
  }
  const tanner::SubtreeCollection sc = tanner::maximal_subtrees(g, pi);

  std::optional<std::size_t> bound;
  const std::size_t w = g.check_degree(0);
  try {
    bound = tanner::subtree_size_bound(g, w);
  } catch (const Error&) {
  }
  std::cout << "# " << loaded.code.parameters() << " " << o.check << " checks=" << g.check_count()
            << " variables=" << g.var_count() << " subtrees=" << sc.size()
            << " bound=" << (bound ? std::to_string(*bound) : "n/a") << "\n";

  std::vector<int> seen(g.check_count(), 0);
  int status = kOk;
  for (std::size_t i = 0; i < sc.size(); ++i) {
    const auto& t = sc.subtrees[i];
    const auto cover = tanner::variable_cover(g, t);
    std::cout << "subtree " << i << " size=" << t.size() << " cover=" << cover.size()
              << " bound=" << (bound ? std::to_string(*bound) : "n/a") << " checks=";
    for (std::size_t j = 0; j < t.size(); ++j) std::cout << (j ? "," : "") << t[j];
    std::cout << "\n";
    for (std::size_t c : t) ++seen[c];
    if (!tanner::is_tree(g, t)) {
      std::cerr << "invariant: subtree " << i << " contains a cycle\n";
      status = kInvariant;
    }
    if (bound && t.size() > *bound) {
      std::cerr << "invariant: subtree " << i << " exceeds the size bound\n";
      status = kInvariant;
    }
  }
  if (std::any_of(seen.begin(), seen.end(), [](int s) { return s != 1; })) {
    std::cerr << "invariant: subtrees do not partition the checks\n";
    status = kInvariant;
  }
  return status;
}

}  // namespace

void add_code_commands(CLI::App& app, Action& action) {
  CLI::App* code = app.add_subcommand("code", "Build or search bicycle codes");
  code->require_subcommand(1);

  auto build = std::make_shared<BuildOpts>();
  CLI::App* b = code->add_subcommand("build", "Print [[n,k,d]] and the row-weight histogram");
  b->add_option("--code", build->code, "Code definition JSON")->required()->check(CLI::ExistingFile);
  b->add_option("--distance-budget", build->budget, "Information-set trials; 0 skips the distance")
      ->capture_default_str();
  b->add_option("--distance-seed", build->seed, "Seed of the distance search")->capture_default_str();
  b->add_flag("--json", build->as_json, "Machine-readable output");
  b->callback([&action, build] { action = [build] { return run_build(*build); }; });

  auto search = std::make_shared<SearchOpts>();
  CLI::App* s = code->add_subcommand("search-ub", "Enumerate univariate bicycle codes as CSV");
  s->add_option("--n", search->n, "Circulant size (code length 2n)")->required();
  s->add_option("--w", search->w, "Stabilizer weight, even")->required();
  s->add_option("--lmax", search->l_max, "Largest power exponent")->capture_default_str();
  s->add_option("--limit", search->limit, "Stop after this many rows; 0 for all")->capture_default_str();
  s->add_option("--threads", search->threads, "Worker threads")->capture_default_str();
  s->callback([&action, search] { action = [search] { return run_search(*search); }; });
}

void add_subtrees_command(CLI::App& app, Action& action) {
  auto opts = std::make_shared<SubtreeOpts>();
  CLI::App* s = app.add_subcommand("subtrees", "Partition the checks into maximal subtrees");
  s->add_option("--code", opts->code, "Code definition JSON")->required()->check(CLI::ExistingFile);
  auto* seed = s->add_option("--seed", opts->seed, "Random root order");
  auto* perm = s->add_option("--perm", opts->perm, "File with the root order")->check(CLI::ExistingFile);
  seed->excludes(perm);
  s->add_option("--check", opts->check, "hz or hx")->capture_default_str();
  s->callback([&action, opts] { action = [opts] { return run_subtrees(*opts); }; });
}

}  // namespace qldpc::cli

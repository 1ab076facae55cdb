#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "dff/error.hpp"
#include "dff/extremality.hpp"
#include "dff/io.hpp"
#include "dff/maximality.hpp"
#include "dff/search.hpp"

namespace dff {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

VertexVerdict classify(const DiscreteFunction& g, std::size_t index) {
  PwlFunction f = g.interpolate();
  if (!maximality_test(f).is_maximal)
    throw Error(ErrorKind::kNotMaximal, "vertex " + std::to_string(index) + " interpolates to a non-maximal function");
  VertexVerdict v{index, false, "Inconclusive"};
  Cover c = covered_components(f);
  if (c.uncovered.empty()) {
    v.covered = true;
    v.status = "Extreme";
    return v;
  }
  for (const auto& iv : c.uncovered)
    if (equivariant_perturbation(f, iv)) {
      v.status = "NotExtreme";
      return v;
    }
  // intervals reached from the cover by moves can still pin the perturbation down
  v.status = to_string(extremality_test(f).status);
  return v;
}

}  // namespace

SearchReport search_extreme(int q, const SearchOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  HRep h = build_polytope(q, opt.mode);
  SearchReport rep;
  rep.q = q;
  rep.mode = opt.mode;
  rep.n_inequalities_original = eliminate_equalities(h).reduced.inequalities.size();
  if (opt.minimize) rep.n_inequalities_minimized = minimize_hrep(h).inequalities.size();
  std::vector<RationalRow> verts = enumerate_vertices(h);
  rep.n_vertices = verts.size();
  rep.dim = affine_dimension(verts);
  rep.seconds_enumeration = seconds_since(t0);

  auto t1 = std::chrono::steady_clock::now();
  std::vector<VertexVerdict> verdicts(verts.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= verts.size()) return;
      try {
        verdicts[i] = classify(DiscreteFunction{q, opt.mode, verts[i]}, i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = verts.size();
      }
    }
  };
  unsigned n_threads = std::max(1u, opt.threads);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  rep.seconds_filter = seconds_since(t1);

  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (verdicts[i].status == "Extreme") {
      ++rep.n_extreme;
      rep.extreme.push_back(DiscreteFunction{q, opt.mode, verts[i]});
    } else if (verdicts[i].status == "Inconclusive") {
      ++rep.n_inconclusive;
    }
  }
  rep.verdicts = std::move(verdicts);
  if (opt.functions_dir) {
    std::filesystem::create_directories(*opt.functions_dir);
    rep.functions_dir = opt.functions_dir->string();
    std::size_t e = 0;
    for (const auto& v : rep.verdicts) {
      if (v.status != "Extreme") continue;
      save_pwl(*opt.functions_dir / ("q" + std::to_string(q) + "_v" + std::to_string(v.index) + ".json"),
               rep.extreme[e++].interpolate());
    }
  }
  return rep;
}

}  // namespace dff

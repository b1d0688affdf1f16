#include "bowen/metric_core.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bowenlab {

bool FiniteDynSystem::map_is_bijective() const {
  std::vector<char> hit(map.size(), 0);
  for (int v : map) {
    if (v < 0 || v >= static_cast<int>(map.size()) || hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

int FiniteDynSystem::iterate(int i, long long t) const {
  for (long long s = 0; s < t; ++s) i = map[i];
  return i;
}

AxiomReport verify_metric_axioms(const FiniteDynSystem& sys) {
  AxiomReport rep;
  const int n = sys.size();
  for (int i = 0; i < n && rep.reflexivity; ++i) {
    if (sys.dist.at(i, i) != 0) {
      rep.reflexivity = false;
      rep.failures.push_back({"reflexivity", i, i, -1});
    }
  }
  for (int i = 0; i < n && rep.symmetry; ++i)
    for (int j = i + 1; j < n && rep.symmetry; ++j)
      if (sys.dist.at(i, j) != sys.dist.at(j, i)) {
        rep.symmetry = false;
        rep.failures.push_back({"symmetry", i, j, -1});
      }
  for (int i = 0; i < n && rep.positive_definiteness; ++i)
    for (int j = 0; j < n && rep.positive_definiteness; ++j)
      if (i != j && sys.dist.at(i, j) <= 0) {
        rep.positive_definiteness = false;
        rep.failures.push_back({"positive-definiteness", i, j, -1});
      }
  // d(i,j) + d(i,k) >= d(j,k) over all ordered triples.
  for (int i = 0; i < n && rep.triangle; ++i)
    for (int j = 0; j < n && rep.triangle; ++j)
      for (int k = 0; k < n; ++k) {
        if (sys.dist.at(i, j) + sys.dist.at(i, k) < sys.dist.at(j, k)) {
          rep.triangle = false;
          rep.failures.push_back({"triangle", i, j, k});
          break;
        }
      }
  return rep;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw <= 1 || n < 4) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  const int workers = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

BowenMatrix bowen(const FiniteDynSystem& sys, long long T) {
  if (T < 1) throw std::invalid_argument("bowen: horizon must be >= 1");
  const int n = sys.size();
  BowenMatrix out;
  out.horizon = T;
  out.dist_T = RatMatrix(n);
  parallel_for(n, [&](int i) {
    for (int j = i + 1; j < n; ++j) {
      int a = i, b = j;
      Rat m = sys.dist.at(a, b);
      for (long long t = 1; t < T; ++t) {
        a = sys.map[a];
        b = sys.map[b];
        const Rat& d = sys.dist.at(a, b);
        if (d > m) m = d;
      }
      out.dist_T.set(i, j, m);
    }
  });
  return out;
}

std::string to_text(const FiniteDynSystem& sys) {
  std::ostringstream os;
  const int n = sys.size();
  os << "points " << n << "\n";
  for (int i = 0; i < n; ++i) os << "map " << i << " " << sys.map[i] << "\n";
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      os << "dist " << i << " " << j << " " << rat_to_string(sys.dist.at(i, j)) << "\n";
  return os.str();
}

FiniteDynSystem system_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  FiniteDynSystem sys;
  int n = -1;
  while (is >> tok) {
    if (tok == "points") {
      if (!(is >> n) || n < 1) throw std::runtime_error("bad points line");
      sys.map.assign(n, 0);
      sys.dist = RatMatrix(n);
      sys.labels.resize(n);
      for (int i = 0; i < n; ++i) sys.labels[i] = std::to_string(i);
    } else if (tok == "map") {
      int i, j;
      if (!(is >> i >> j) || n < 0 || i < 0 || i >= n || j < 0 || j >= n)
        throw std::runtime_error("bad map line");
      sys.map[i] = j;
    } else if (tok == "dist") {
      int i, j;
      std::string val;
      if (!(is >> i >> j >> val) || n < 0 || i < 0 || i >= n || j < 0 || j >= n)
        throw std::runtime_error("bad dist line");
      sys.dist.set(i, j, parse_rat_or_throw(val));
    } else {
      throw std::runtime_error("unknown token in system file: " + tok);
    }
  }
  if (n < 0) throw std::runtime_error("missing points header");
  return sys;
}

FiniteDynSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open system file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return system_from_text(buf.str());
}

void save_system(const FiniteDynSystem& sys, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write system file: " + path);
  out << to_text(sys);
}

}  // namespace bowenlab

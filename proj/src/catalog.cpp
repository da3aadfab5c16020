// Reference data loaders and family builders.  Parsing is line based:
// comments own the line, "# name: X" labels the next block, and every
// loader validates what it reads (matrix shapes, characteristic checks,
// polytope labels) so a corrupted data file fails loudly at load time.

#include "qtoric/catalog.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qtoric::catalog {

namespace {

std::string slurp(const std::string& filename) {
  std::string path = data_dir() + "/" + filename;
  std::ifstream in(path);
  if (!in) fail("cannot open data file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

// runs f(name, header_tokens, row_lines) for every named block
template <class F>
void for_each_block(const std::string& filename, const std::string& kind, F f) {
  auto lines = split_lines(slurp(filename));
  std::string pending_name;
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (is_blank(line)) continue;
    if (line[0] == '#') {
      auto pos = line.find("name:");
      if (pos != std::string::npos) {
        pending_name = line.substr(pos + 5);
        pending_name.erase(0, pending_name.find_first_not_of(" \t"));
        pending_name.erase(pending_name.find_last_not_of(" \t\r") + 1);
      }
      continue;
    }
    auto head = tokens(line);
    if (head.empty() || head[0] != kind)
      fail("unexpected line in " + filename + ": " + line);
    if (pending_name.empty()) fail("unnamed block in " + filename);
    int rows = std::stoi(head.at(1));
    std::vector<std::string> body;
    for (int r = 0; r < rows; ++r) {
      if (++i >= lines.size()) fail("truncated block in " + filename);
      body.push_back(lines[i]);
    }
    f(pending_name, head, body);
    pending_name.clear();
  }
}

Mat parse_rows(const std::vector<std::string>& body, int rows, int cols,
               const std::string& where) {
  Mat M(rows, cols);
  for (int r = 0; r < rows; ++r) {
    auto ts = tokens(body[r]);
    if (static_cast<int>(ts.size()) != cols) fail("bad row width in " + where);
    for (int c = 0; c < cols; ++c) M.at(r, c) = std::stoll(ts[c]);
  }
  return M;
}

CharMatrix make(const CombinatorialPolytope& P, Coeff coeff, std::vector<i64> entries) {
  Mat M(P.n, P.m);
  M.a = std::move(entries);
  CharMatrix cm{coeff, std::move(M), P};
  if (!is_characteristic(cm)) fail("constructed matrix is not characteristic on " + P.label);
  return cm;
}

// data lines of an orbit/table file with comments stripped
std::vector<std::string> data_lines(const std::string& filename) {
  std::vector<std::string> out;
  for (auto& line : split_lines(slurp(filename)))
    if (!is_blank(line) && line[0] != '#') out.push_back(line);
  return out;
}

}  // namespace

std::string data_dir() {
  if (const char* env = std::getenv("QTORIC_DATA_DIR")) return env;
  return QTORIC_DATA_DIR;
}

CombinatorialPolytope polytope_from_label(const std::string& label) {
  int n = 0, m = 0;
  if (std::sscanf(label.c_str(), "Delta^%d", &n) == 1) return simplex(n);
  if (std::sscanf(label.c_str(), "P_%d", &m) == 1) return polygon(m);
  if (std::sscanf(label.c_str(), "C^%d(%d)*", &n, &m) == 2) return dual_cyclic(n, m);
  fail("unrecognised polytope label " + label);
}

std::vector<NamedCharMat> load_charmats(const std::string& filename) {
  std::vector<NamedCharMat> out;
  for_each_block(filename, "charmat", [&](const std::string& name,
                                          const std::vector<std::string>& head,
                                          const std::vector<std::string>& body) {
    int n = std::stoi(head.at(1)), m = std::stoi(head.at(2));
    Coeff coeff;
    if (head.at(3) == "Z")
      coeff = Coeff::Z;
    else if (head.at(3) == "Z2")
      coeff = Coeff::Z2;
    else
      fail("bad coefficient tag in " + filename);
    CombinatorialPolytope P = polytope_from_label(head.at(4));
    if (P.n != n || P.m != m) fail("block shape disagrees with polytope in " + filename);
    CharMatrix cm{coeff, parse_rows(body, n, m, filename), P};
    if (!is_characteristic(cm)) fail("matrix " + name + " in " + filename + " is not characteristic");
    out.push_back({name, std::move(cm)});
  });
  return out;
}

std::vector<NamedMat> load_mats(const std::string& filename) {
  std::vector<NamedMat> out;
  for_each_block(filename, "mat", [&](const std::string& name,
                                      const std::vector<std::string>& head,
                                      const std::vector<std::string>& body) {
    int r = std::stoi(head.at(1)), c = std::stoi(head.at(2));
    out.push_back({name, parse_rows(body, r, c, filename)});
  });
  return out;
}

std::vector<NamedCharMat> c47_lifts() {
  auto out = load_charmats("c47_lifts.txt");
  if (out.size() != 28) fail("expected 28 lifts on C^4(7)*");
  return out;
}

CharMatrix c47_lift(int k) {
  static const std::vector<NamedCharMat> all = c47_lifts();
  if (k < 1 || k > 28) fail("lift index out of range");
  return all[k - 1].cm;
}

CharMatrix c47_real(char which) {
  static const std::vector<NamedCharMat> all = load_charmats("c47_real.txt");
  return all.at(which == 'a' ? 0 : 1).cm;
}

std::vector<std::vector<int>> c47_orbits_golden() {
  std::vector<std::vector<int>> out;
  for (auto& line : data_lines("c47_sigma_orbits.txt")) {
    std::vector<int> orbit;
    for (auto& t : tokens(line)) orbit.push_back(std::stoi(t));
    out.push_back(std::move(orbit));
  }
  return out;
}

std::vector<C58Key> c58_lift_table() {
  std::vector<C58Key> out;
  for (auto& line : data_lines("c58_lifts.txt")) {
    auto ts = tokens(line);
    if (ts.size() != 3) fail("bad line in c58_lifts.txt");
    out.push_back({std::stoi(ts[0]), std::stoll(ts[1]), std::stoll(ts[2])});
  }
  if (out.size() != 64) fail("expected 64 lifts on C^5(8)*");
  return out;
}

CharMatrix c58_lift(const C58Key& key) {
  CharMatrix L = c47_lift(key.k);
  CombinatorialPolytope P = dual_cyclic(5, 8);
  Mat M(5, 8);
  M.at(0, 0) = 1;
  M.at(0, 5) = key.a;
  M.at(0, 6) = key.b;
  M.at(0, 7) = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 7; ++j) M.at(i + 1, j + 1) = L.mat.at(i, j);
  CharMatrix cm{Coeff::Z, std::move(M), std::move(P)};
  if (!is_characteristic(cm)) fail("c58 lift is not characteristic");
  return cm;
}

CharMatrix c58_real(char which) {
  static const std::vector<NamedCharMat> all = load_charmats("c58_real.txt");
  return all.at(which == 'a' ? 0 : 1).cm;
}

std::vector<std::vector<C58Key>> c58_orbits_golden() {
  std::vector<std::vector<C58Key>> out;
  for (auto& line : data_lines("c58_sigma_orbits.txt")) {
    std::vector<C58Key> orbit;
    for (auto& t : tokens(line)) {
      C58Key key;
      if (std::sscanf(t.c_str(), "%d,%lld,%lld", &key.k, &key.a, &key.b) != 3)
        fail("bad member in c58_sigma_orbits.txt: " + t);
      orbit.push_back(key);
    }
    out.push_back(std::move(orbit));
  }
  if (out.size() != 46) fail("expected 46 rotation orbits on C^5(8)*");
  return out;
}

std::vector<NamedMat> c58_phi() { return load_mats("c58_phi.txt"); }

std::vector<NamedCharMat> c36_named() {
  auto out = load_charmats("c36_named.txt");
  if (out.size() != 6) fail("expected 6 named classes on C^3(6)*");
  return out;
}

CharMatrix c36_lambda_d(i64 d) {
  if (d > -2 && d < 3) fail("family parameter must satisfy d <= -2 or d >= 3");
  return make(dual_cyclic(3, 6), Coeff::Z,
              {1, 0, 0, 0, 0, 1,
               0, 1, 0, 1, 1, d,
               0, 0, 1, 1, 0, 1});
}

Mat c36_iso_certificate() {
  static const std::vector<NamedMat> all = load_mats("c36_iso_cert.txt");
  return all.at(0).mat;
}

CharMatrix c3_terminal(const std::string& name) {
  static const std::vector<NamedCharMat> all = load_charmats("c3_terminal.txt");
  for (const auto& nc : all)
    if (nc.name == name) return nc.cm;
  fail("unknown terminal piece " + name);
}

CharMatrix p4_hirzebruch(i64 k) {
  return make(polygon(4), Coeff::Z, {1, 0, 1, k, 0, 1, 0, 1});
}

CharMatrix p4_sum_cp2_cp2() {
  return make(polygon(4), Coeff::Z, {1, 0, 1, 2, 0, 1, 1, 1});
}

CharMatrix p4_real_torus() {
  return make(polygon(4), Coeff::Z2, {1, 0, 1, 0, 0, 1, 0, 1});
}

CharMatrix p4_real_klein() {
  return make(polygon(4), Coeff::Z2, {1, 0, 1, 1, 0, 1, 0, 1});
}

CharMatrix p3_cp2(int sign) {
  if (sign != 1 && sign != -1) fail("triangle orientation must be +-1");
  return make(simplex(2), Coeff::Z, {1, 0, 1, 0, 1, sign});
}

std::vector<PairingRow> table1() {
  auto lines = data_lines("table1.csv");
  if (lines.size() < 2) fail("table1.csv is empty");
  auto split_csv = [](const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        out.push_back(cur);
        cur.clear();
      } else if (ch != '\r') {
        cur.push_back(ch);
      }
    }
    out.push_back(cur);
    return out;
  };
  auto header = split_csv(lines[0]);
  if (header.size() < 3 || header[0] != "ring" || header[1] != "lift")
    fail("unexpected table1.csv header");
  std::vector<PairingRow> out;
  for (size_t r = 1; r < lines.size(); ++r) {
    auto cells = split_csv(lines[r]);
    if (cells.size() != header.size()) fail("ragged row in table1.csv");
    PairingRow row;
    row.ring = cells[0];
    row.lift = std::stoi(cells[1]);
    for (size_t c = 2; c < cells.size(); ++c)
      row.values.emplace_back(header[c], std::stoll(cells[c]));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace qtoric::catalog

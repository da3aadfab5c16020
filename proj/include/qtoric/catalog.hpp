// Loaders for the reference data shipped under data/: named characteristic
// matrix blocks, named integer matrices, orbit tables and the top-degree
// pairing table, plus builders for the parameterised families that are
// easier to construct in code than to list (Hirzebruch-type matrices on
// the square, the one-parameter family on C^3(6)*, the C^5(8)* lifts).
//
// File format: '#' starts a comment; a comment "# name: X" names the next
// block; blocks are "charmat n m Z|Z2 <polytope-label>" or "mat r c"
// followed by that many rows of whitespace-separated integers.

#pragma once

#include "qtoric/charmat.hpp"

#include <string>
#include <vector>

namespace qtoric::catalog {

// compile-time data directory; the QTORIC_DATA_DIR environment variable
// overrides it
std::string data_dir();

struct NamedMat {
  std::string name;
  Mat mat;
};
struct NamedCharMat {
  std::string name;
  CharMatrix cm;
};

// filename is relative to data_dir()
std::vector<NamedCharMat> load_charmats(const std::string& filename);
std::vector<NamedMat> load_mats(const std::string& filename);
CombinatorialPolytope polytope_from_label(const std::string& label);

// ---- C^4(7)* ----
std::vector<NamedCharMat> c47_lifts();             // lift01..lift28 in file order
CharMatrix c47_lift(int k);                        // k = 1..28
CharMatrix c47_real(char which);                   // 'a' or 'b'
std::vector<std::vector<int>> c47_orbits_golden(); // rotation orbits by lift index

// ---- C^5(8)* ----
struct C58Key {
  int k = 0;  // index into c47_lifts
  i64 a = 0, b = 0;
  auto operator<=>(const C58Key&) const = default;
};
std::vector<C58Key> c58_lift_table();
// first row (1 0 0 0 0 a b 1), remaining rows (0 | L_k)
CharMatrix c58_lift(const C58Key& key);
CharMatrix c58_real(char which);
std::vector<std::vector<C58Key>> c58_orbits_golden();
std::vector<NamedMat> c58_phi();  // phi_1..phi_7

// ---- C^3(6)* ----
// lambda_1, lambda_1p, lambda_2, lambda_2p, lambda_2pp, lambda_2ppp
std::vector<NamedCharMat> c36_named();
CharMatrix c36_lambda_d(i64 d);  // star rows (0,0,1),(1,1,d),(1,0,1); d <= -2 or d >= 3
Mat c36_iso_certificate();       // generator images for lambda_1p -> lambda_2ppp

// ---- terminal pieces of the 3-dimensional small cover classifier ----
CharMatrix c3_terminal(const std::string& name);  // rp3, rp1xrp2_a, rp1xrp2_b

// ---- square ----
CharMatrix p4_hirzebruch(i64 k);     // rows (1,0,1,k),(0,1,0,1)
CharMatrix p4_sum_cp2_cp2();         // rows (1,0,1,2),(0,1,1,1)
CharMatrix p4_real_torus();          // Z/2, rows (1,0,1,0),(0,1,0,1)
CharMatrix p4_real_klein();          // Z/2, rows (1,0,1,1),(0,1,0,1)

// ---- triangle ----
CharMatrix p3_cp2(int sign);  // rows (1,0,1),(0,1,sign); sign = +-1

// ---- top-degree pairing goldens for the C^4(7)* orbit representatives ----
struct PairingRow {
  std::string ring;  // A, B, C, D
  int lift = 0;      // representative index in c47_lifts
  std::vector<std::pair<std::string, i64>> values;  // monomial -> pairing
};
std::vector<PairingRow> table1();

}  // namespace qtoric::catalog

#pragma once

#include <iosfwd>
#include <string>

#include "schatten/hamiltonian.hpp"

#include <nlohmann/json_fwd.hpp>

namespace schatten {

// Hamiltonian JSON schema:
//   {"n": int, "terms": [{"qubits": [int], "matrix": [[[re,im],...],...]}]}
nlohmann::json hamiltonian_to_json(const LogLocalHamiltonian& h);
LogLocalHamiltonian hamiltonian_from_json(const nlohmann::json& j, const Config& cfg = {});
LogLocalHamiltonian load_hamiltonian(const std::string& path, const Config& cfg = {});
void save_hamiltonian(const LogLocalHamiltonian& h, const std::string& path);

// Sparse-matrix text format: first line "N d class", then one "i j re im"
// line per upper-triangle (i <= j) nonzero.
void write_sparse_text(const SparseHermitian& a, std::ostream& os);
SparseHermitian read_sparse_text(std::istream& is);
SparseHermitian load_sparse_text(const std::string& path);
void save_sparse_text(const SparseHermitian& a, const std::string& path);

Mat matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Mat& m);

}  // namespace schatten

#include "schatten/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace schatten {

using nlohmann::json;

json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw InputError("matrix: expected nonempty array");
    const Eigen::Index r = static_cast<Eigen::Index>(j.size());
    const Eigen::Index c = static_cast<Eigen::Index>(j.at(0).size());
    Mat m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
        const auto& row = j.at(i);
        if (static_cast<Eigen::Index>(row.size()) != c)
            throw InputError("matrix: ragged rows");
        for (Eigen::Index k = 0; k < c; ++k) {
            const auto& e = row.at(k);
            if (!e.is_array() || e.size() != 2)
                throw InputError("matrix: entries must be [re, im] pairs");
            m(i, k) = Cx{e.at(0).get<double>(), e.at(1).get<double>()};
        }
    }
    return m;
}

json hamiltonian_to_json(const LogLocalHamiltonian& h) {
    json terms = json::array();
    for (const auto& t : h.terms)
        terms.push_back({{"qubits", t.qubits}, {"matrix", matrix_to_json(t.matrix)}});
    return json{{"n", h.n}, {"terms", std::move(terms)}};
}

LogLocalHamiltonian hamiltonian_from_json(const json& j, const Config& cfg) {
    LogLocalHamiltonian h;
    try {
        h.n = j.at("n").get<int>();
        for (const auto& tj : j.at("terms")) {
            LocalTerm t;
            t.qubits = tj.at("qubits").get<std::vector<int>>();
            t.matrix = matrix_from_json(tj.at("matrix"));
            h.terms.push_back(std::move(t));
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("hamiltonian json: ") + e.what());
    }
    h.validate(cfg);
    return h;
}

LogLocalHamiltonian load_hamiltonian(const std::string& path, const Config& cfg) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    return hamiltonian_from_json(j, cfg);
}

void save_hamiltonian(const LogLocalHamiltonian& h, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open " + path + " for writing");
    out << hamiltonian_to_json(h).dump(2) << "\n";
}

void write_sparse_text(const SparseHermitian& a, std::ostream& os) {
    os << a.dim() << " " << a.sparsity() << " " << to_string(a.matrix_class()) << "\n";
    for (int i = 0; i < a.dim(); ++i)
        for (const auto& [j, v] : a.row(i))
            if (i <= j) os << i << " " << j << " " << v.real() << " " << v.imag() << "\n";
}

SparseHermitian read_sparse_text(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw InputError("sparse text: empty input");
    std::istringstream hs(header);
    int n = 0, d = 0;
    std::string cls;
    if (!(hs >> n >> d >> cls)) throw InputError("sparse text: bad header line");
    if (n <= 0) throw InputError("sparse text: dimension must be positive");
    std::vector<SparseHermitian::Row> rows(n);
    std::string line;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        int i = 0, j = 0;
        double re = 0.0, im = 0.0;
        if (!(ls >> i >> j >> re >> im))
            throw InputError("sparse text: bad entry at line " + std::to_string(lineno));
        if (i < 0 || j < 0 || i >= n || j >= n || i > j)
            throw InputError("sparse text: index out of range at line " + std::to_string(lineno));
        rows[i].emplace_back(j, Cx{re, im});
        if (i != j) rows[j].emplace_back(i, Cx{re, -im});
    }
    SparseHermitian a(n, std::move(rows), matrix_class_from_string(cls));
    if (a.sparsity() > d)
        throw InputError("sparse text: declared sparsity " + std::to_string(d) +
                         " exceeded (actual " + std::to_string(a.sparsity()) + ")");
    return a;
}

SparseHermitian load_sparse_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_sparse_text(in);
}

void save_sparse_text(const SparseHermitian& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open " + path + " for writing");
    write_sparse_text(a, out);
}

}  // namespace schatten

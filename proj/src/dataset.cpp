// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#include "k3cls/dataset.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace k3cls {

namespace {

using nlohmann::json;

mpz_class to_mpz(const json& j, const char* what) {
    if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return mpz_class(j.get<std::string>());
    throw std::invalid_argument(std::string("dataset: ") + what + " must be an integer");
}

IntMat to_matrix(const json& j, const char* what) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument(std::string("dataset: ") + what +
                                    " must be a non-empty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0)
        throw std::invalid_argument(std::string("dataset: ") + what + " rows must be arrays");
    IntMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw std::invalid_argument(std::string("dataset: ") + what +
                                        " rows must all have the same length");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = to_mpz(j[i][k], what);
    }
    return m;
}

json parse_text(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw std::runtime_error(std::string(what) + ": malformed JSON");
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

ReferenceCase parse_case(const json& j) {
    ReferenceCase c;
    c.label = j.at("label").get<std::string>();
    c.n = j.at("n").get<int>();
    c.tx = to_matrix(j.at("tx"), "tx");
    if (c.tx.rows() != 2 || c.tx.cols() != 2 || !c.tx.is_symmetric())
        throw std::invalid_argument("dataset: tx must be a symmetric 2x2 matrix");
    c.l_square = to_mpz(j.at("l2"), "l2");
    c.glue = to_mpz(j.at("glue"), "glue");
    if (j.contains("gap_id") && !j.at("gap_id").is_null()) {
        const json& g = j.at("gap_id");
        if (!g.is_array() || g.size() != 2)
            throw std::invalid_argument("dataset: gap_id must be [order, id] or null");
        c.gap_id = std::array<long, 2>{g[0].get<long>(), g[1].get<long>()};
    }
    c.splits = j.value("splits", true);
    return c;
}

ReferenceLattice parse_lattice_entry(const json& j) {
    ReferenceLattice e;
    e.key = j.at("key").get<std::string>();
    e.group_no = j.at("group_no").get<int>();
    e.group_name = j.at("group_name").get<std::string>();
    e.group_order = j.at("group_order").get<long>();
    e.gram = to_matrix(j.at("gram"), "gram");
    if (e.gram.rows() != 3 || e.gram.cols() != 3 || !e.gram.is_symmetric())
        throw std::invalid_argument("dataset: gram must be a symmetric 3x3 matrix");
    e.det = to_mpz(j.at("det"), "det");
    e.so_dihedral_k = j.at("so_dihedral_k").get<int>();
    if (j.contains("printed_so_dihedral_k"))
        e.printed_so_dihedral_k = j.at("printed_so_dihedral_k").get<int>();
    e.note = j.value("note", std::string());
    e.genus = j.at("genus").get<std::string>();
    e.disc_aut_order = to_mpz(j.at("disc_aut_order"), "disc_aut_order");
    e.complement_aut_order = to_mpz(j.at("complement_aut_order"), "complement_aut_order");
    for (const json& c : j.at("cases")) e.cases.push_back(parse_case(c));
    return e;
}

}  // namespace

const ReferenceLattice* ReferenceData::find(const std::string& key) const {
    for (const auto& e : lattices)
        if (e.key == key) return &e;
    return nullptr;
}

std::size_t ReferenceData::case_count() const {
    std::size_t n = 0;
    for (const auto& e : lattices) n += e.cases.size();
    return n;
}

ReferenceData parse_reference(const std::string& json_text) {
    json j = parse_text(json_text, "reference dataset");
    if (!j.is_object() || !j.contains("lattices"))
        throw std::invalid_argument("dataset: missing \"lattices\" array");
    ReferenceData data;
    for (const json& e : j.at("lattices")) data.lattices.push_back(parse_lattice_entry(e));
    return data;
}

ReferenceData load_reference() {
    if (const char* path = std::getenv("K3CLS_DATA"); path && *path)
        return parse_reference(read_file(path));
    return parse_reference(detail::embedded_reference_json());
}

Lattice parse_lattice_json(const std::string& json_text) {
    json j = parse_text(json_text, "lattice");
    if (!j.is_object() || !j.contains("gram"))
        throw std::invalid_argument("lattice JSON: missing \"gram\"");
    IntMat gram = to_matrix(j.at("gram"), "gram");
    if (!gram.is_symmetric())
        throw std::invalid_argument("lattice JSON: gram must be symmetric");
    std::string label = j.value("label", std::string());
    return Lattice(std::move(gram), label);
}

Lattice load_lattice_file(const std::string& path) {
    return parse_lattice_json(read_file(path));
}

CoinvariantFile parse_coinvariant_json(const std::string& json_text) {
    json j = parse_text(json_text, "coinvariant data");
    if (!j.is_object() || !j.contains("gram") || !j.contains("glue_generators") ||
        !j.contains("label"))
        throw std::invalid_argument(
            "coinvariant JSON: requires \"label\", \"gram\" and \"glue_generators\"");

    CoinvariantFile out;
    out.label = j.at("label").get<std::string>();
    IntMat gram = to_matrix(j.at("gram"), "gram");
    if (!gram.is_symmetric())
        throw std::invalid_argument("coinvariant JSON: gram must be symmetric");
    out.data.lattice = Lattice(std::move(gram), out.label);

    // the orders of the supplied lattice's canonical disc-group generators
    const std::vector<mpz_class> factors = discriminant_group(out.data.lattice).invariant_factors;

    const json& gens = j.at("glue_generators");
    if (!gens.is_array())
        throw std::invalid_argument("coinvariant JSON: glue_generators must be an array");
    const std::size_t cols = gens.size();
    IntMat images(factors.size(), cols);
    for (std::size_t c = 0; c < cols; ++c) {
        const json& col = gens[c];
        if (!col.is_array() || col.size() != factors.size())
            throw std::invalid_argument(
                "coinvariant JSON: each glue generator needs one coefficient per "
                "discriminant-group generator of the supplied lattice");
        for (std::size_t r = 0; r < factors.size(); ++r) {
            const json& entry = col[r];
            mpz_class value;
            if (entry.is_array()) {
                if (entry.size() != 2)
                    throw std::invalid_argument(
                        "coinvariant JSON: rational coefficients are [num, den] pairs");
                mpz_class num = to_mpz(entry[0], "glue coefficient");
                mpz_class den = to_mpz(entry[1], "glue coefficient");
                mpz_class inv;
                if (den == 0 ||
                    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), factors[r].get_mpz_t()) == 0)
                    throw std::invalid_argument(
                        "coinvariant JSON: denominator not invertible modulo the "
                        "generator order");
                value = num * inv;
            } else {
                value = to_mpz(entry, "glue coefficient");
            }
            mpz_fdiv_r(value.get_mpz_t(), value.get_mpz_t(), factors[r].get_mpz_t());
            images(r, c) = value;
        }
    }
    out.data.glue_images = images;
    return out;
}

CoinvariantFile load_coinvariant_file(const std::string& path) {
    return parse_coinvariant_json(read_file(path));
}

}  // namespace k3cls

// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#include "k3cls/render.hpp"

#include <algorithm>
#include <array>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace k3cls {

namespace {

std::string tx_text(const IntMat& m) {
    std::ostringstream out;
    out << "[" << m(0, 0) << " " << m(0, 1) << "; " << m(1, 0) << " " << m(1, 1) << "]";
    return out.str();
}

std::string str(const mpz_class& v) { return v.get_str(); }

std::string cases_csv(const std::vector<CaseRecord>& records) {
    std::ostringstream out;
    out << "group_no,label,n,l2,glue,tx_11,tx_12,tx_22\n";
    for (const CaseRecord& r : records)
        out << r.group_no << "," << r.label << "," << r.n << "," << r.l_square << ","
            << r.glue_index << "," << r.tx(0, 0) << "," << r.tx(0, 1) << "," << r.tx(1, 1)
            << "\n";
    return out.str();
}

std::string cases_json(const std::vector<CaseRecord>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CaseRecord& r : records) {
        nlohmann::ordered_json row;
        row["lattice"] = r.lattice_key;
        row["group_no"] = std::to_string(r.group_no);
        row["label"] = r.label;
        row["n"] = std::to_string(r.n);
        row["l2"] = str(r.l_square);
        row["glue"] = str(r.glue_index);
        row["tx"] = nlohmann::ordered_json::array(
            {nlohmann::ordered_json::array({str(r.tx(0, 0)), str(r.tx(0, 1))}),
             nlohmann::ordered_json::array({str(r.tx(1, 0)), str(r.tx(1, 1))})});
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

std::string cases_table(const std::vector<CaseRecord>& records, bool markdown) {
    std::vector<std::array<std::string, 6>> rows;
    rows.push_back({"lattice", "case", "n", "l2", "glue", "T_X"});
    for (const CaseRecord& r : records)
        rows.push_back({r.lattice_key.empty() ? "-" : r.lattice_key, r.label,
                        std::to_string(r.n), str(r.l_square), str(r.glue_index),
                        tx_text(r.tx)});

    std::array<std::size_t, 6> width{};
    for (const auto& row : rows)
        for (std::size_t c = 0; c < 6; ++c) width[c] = std::max(width[c], row[c].size());

    std::ostringstream out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (markdown) out << "|";
        for (std::size_t c = 0; c < 6; ++c) {
            if (markdown)
                out << " " << std::left << std::setw(static_cast<int>(width[c])) << rows[i][c]
                    << " |";
            else
                out << std::left << std::setw(static_cast<int>(width[c])) << rows[i][c]
                    << (c + 1 < 6 ? "  " : "");
        }
        out << "\n";
        if (i == 0 && markdown) {
            out << "|";
            for (std::size_t c = 0; c < 6; ++c) out << std::string(width[c] + 2, '-') << "|";
            out << "\n";
        }
    }
    return out.str();
}

std::string verification_text(const VerificationReport& r) {
    std::ostringstream out;
    out << r.cases_matched << "/" << r.cases_checked << " cases, " << r.rows_matched << "/"
        << r.rows_checked << " table rows\n";
    if (r.mismatches.empty()) {
        out << "result: PASS\n";
    } else {
        out << "result: FAIL (" << r.mismatches.size() << " mismatch"
            << (r.mismatches.size() == 1 ? "" : "es") << ")\n";
        for (const auto& m : r.mismatches) out << "  mismatch: " << m << "\n";
    }
    for (const auto& n : r.notes) out << "  note: " << n << "\n";
    return out.str();
}

std::string verification_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["cases_checked"] = std::to_string(r.cases_checked);
    j["cases_matched"] = std::to_string(r.cases_matched);
    j["rows_checked"] = std::to_string(r.rows_checked);
    j["rows_matched"] = std::to_string(r.rows_matched);
    j["ok"] = r.ok();
    j["mismatches"] = r.mismatches;
    j["notes"] = r.notes;
    return j.dump(2) + "\n";
}

}  // namespace

std::optional<OutputFormat> parse_format(const std::string& name) {
    if (name == "text") return OutputFormat::text;
    if (name == "csv") return OutputFormat::csv;
    if (name == "md") return OutputFormat::md;
    if (name == "json") return OutputFormat::json;
    return std::nullopt;
}

std::string render_cases(const std::vector<CaseRecord>& records, OutputFormat format) {
    switch (format) {
        case OutputFormat::csv: return cases_csv(records);
        case OutputFormat::json: return cases_json(records);
        case OutputFormat::md: return cases_table(records, true);
        case OutputFormat::text: break;
    }
    return cases_table(records, false);
}

std::string render_verification(const VerificationReport& report, OutputFormat format) {
    if (format == OutputFormat::json) return verification_json(report);
    return verification_text(report);
}

}  // namespace k3cls

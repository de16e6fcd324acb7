// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0

#include "k3cls/classify.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "k3cls/discform.hpp"
#include "k3cls/genus.hpp"

namespace k3cls {

namespace {

// Run f(0..count-1) on `threads` workers; exceptions are rethrown on the
// calling thread in index order, so behavior is thread-count independent.
template <typename F>
void parallel_for(std::size_t count, unsigned threads, F&& f) {
    if (count == 0) return;
    threads = std::max<unsigned>(1, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    std::vector<std::exception_ptr> errors(count);
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            try {
                f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    f(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (std::size_t i = 0; i < count; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
}

std::string gram_to_text(const IntMat& m) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) out << "; ";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << " ";
            out << m(i, j);
        }
    }
    out << "]";
    return out.str();
}

// Attach reference labels to computed records by matching on
// (n, l², glue, T_X up to isometry); each reference case is consumed at most
// once.  Returns the number of records matched.
std::size_t attach_labels(const ReferenceLattice& entry, std::vector<CaseRecord>& records,
                          std::vector<std::string>* mismatches) {
    std::vector<bool> used(entry.cases.size(), false);
    std::size_t matched = 0;
    for (CaseRecord& rec : records) {
        int found = -1;
        for (std::size_t i = 0; i < entry.cases.size(); ++i) {
            const ReferenceCase& rc = entry.cases[i];
            if (used[i] || rc.n != rec.n || rc.l_square != rec.l_square ||
                rc.glue != rec.glue_index)
                continue;
            if (!is_isometric(Lattice(rec.tx), Lattice(rc.tx)).has_value()) continue;
            found = static_cast<int>(i);
            break;
        }
        if (found >= 0) {
            used[static_cast<std::size_t>(found)] = true;
            rec.label = entry.cases[static_cast<std::size_t>(found)].label;
            ++matched;
        } else if (mismatches) {
            std::ostringstream msg;
            msg << entry.key << ": computed case (n=" << rec.n << ", l2=" << rec.l_square
                << ", glue=" << rec.glue_index << ", T_X=" << gram_to_text(rec.tx)
                << ") has no reference counterpart";
            mismatches->push_back(msg.str());
        }
    }
    if (mismatches)
        for (std::size_t i = 0; i < entry.cases.size(); ++i)
            if (!used[i])
                mismatches->push_back(entry.key + ": reference case " + entry.cases[i].label +
                                      " was not produced by the classification");
    return matched;
}

// Everything verify needs from one lattice, computed in one pass.
struct EntryResult {
    std::vector<CaseRecord> records;
    std::size_t matched_cases = 0;
    bool row_ok = true;  // det, dihedral k, genus, #O(q), product identity
    std::vector<std::string> mismatches;
    std::vector<std::string> notes;
};

void check_entry(const ReferenceLattice& entry, EntryResult& out) {
    const Lattice h = entry.lattice();
    auto flag = [&](const std::string& msg) {
        out.mismatches.push_back(entry.key + ": " + msg);
        out.row_ok = false;
    };

    if (h.det() != entry.det) {
        std::ostringstream msg;
        msg << "det mismatch: computed " << h.det() << ", expected " << entry.det;
        flag(msg.str());
    }

    try {
        MatrixGroup so = special_subgroup(automorphism_group(h));
        std::optional<std::size_t> k = dihedral_recognition(so);
        if (!k) {
            std::ostringstream msg;
            msg << "SO (order " << so.order() << ") is not dihedral";
            flag(msg.str());
        } else if (*k != static_cast<std::size_t>(entry.so_dihedral_k)) {
            std::ostringstream msg;
            msg << "SO is D" << *k << ", expected D" << entry.so_dihedral_k;
            flag(msg.str());
        } else if (entry.printed_so_dihedral_k &&
                   *entry.printed_so_dihedral_k != entry.so_dihedral_k) {
            std::ostringstream note;
            note << entry.key << ": SO is D" << *k << " by computation; the source prints D"
                 << *entry.printed_so_dihedral_k << " (see the dataset note for this row)";
            out.notes.push_back(note.str());
        }
    } catch (const std::exception& e) {
        flag(std::string("SO computation failed: ") + e.what());
    }

    try {
        const std::string genus = genus_symbol(h).to_string();
        if (genus != entry.genus)
            flag("genus mismatch: computed \"" + genus + "\", expected \"" + entry.genus + "\"");
    } catch (const std::exception& e) {
        flag(std::string("genus computation failed: ") + e.what());
    }

    try {
        const mpz_class oq = orthogonal_group_of_form(disc_form(h)).order();
        if (oq != entry.disc_aut_order) {
            std::ostringstream msg;
            msg << "#O(q) mismatch: computed " << oq << ", expected " << entry.disc_aut_order;
            flag(msg.str());
        }
    } catch (const std::exception& e) {
        flag(std::string("#O(q) computation failed: ") + e.what());
    }

    if (mpz_class(entry.group_order) * entry.disc_aut_order != entry.complement_aut_order) {
        std::ostringstream msg;
        msg << "product identity fails on the embedded numbers: " << entry.group_order << " * "
            << entry.disc_aut_order << " != " << entry.complement_aut_order;
        flag(msg.str());
    }

    try {
        out.records = classify_lattice(h);
        for (CaseRecord& rec : out.records) {
            rec.lattice_key = entry.key;
            rec.group_no = entry.group_no;
        }
        out.matched_cases = attach_labels(entry, out.records, &out.mismatches);
    } catch (const std::exception& e) {
        out.mismatches.push_back(entry.key + ": classification failed: " + e.what());
    }
}

}  // namespace

bool char_poly_check(const IntMat& g) {
    if (g.rows() != 3 || g.cols() != 3) return false;
    if (det(g) != 1) return false;
    const mpz_class trace = g(0, 0) + g(1, 1) + g(2, 2);
    const mpz_class minor_sum = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)) +
                                (g(0, 0) * g(2, 2) - g(0, 2) * g(2, 0)) +
                                (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1));
    // χ(x) = x³ − trace·x² + minor_sum·x − 1; (x−1) divides iff χ(1) = 0.
    if (minor_sum != trace) return false;
    // χ(x)/(x−1) = x² + (1 − trace)·x + 1 must be (x+1)² or Φ_n, n ∈ {3,4,6};
    // (x−1)² — the identity — is the excluded trivial case.
    const mpz_class b = 1 - trace;
    return b == 2 || b == 1 || b == 0 || b == -1;
}

std::vector<CaseRecord> classify_lattice(const Lattice& h) {
    if (h.rank() != 3)
        throw std::invalid_argument("classify_lattice: lattice must have rank 3");
    if (!h.is_even() || !h.is_positive_definite())
        throw std::invalid_argument(
            "classify_lattice: lattice must be even and positive definite");

    MatrixGroup so = special_subgroup(automorphism_group(h));
    if (!dihedral_recognition(so))
        throw std::invalid_argument("classify_lattice: SO is not dihedral");

    std::vector<CaseRecord> out;
    for (const CyclicClass& cc : maximal_cyclic_classes(so)) {
        const IntMat& g = cc.generator;
        if (!char_poly_check(g))
            throw std::invalid_argument(
                "classify_lattice: generator fails the characteristic-polynomial "
                "constraint");
        if (cc.order % 2 != 0)
            throw std::invalid_argument("classify_lattice: cyclic class of odd order");

        IntMat ker = kernel_saturated(g - IntMat::identity(3));
        if (ker.rows() != 1)
            throw std::invalid_argument("classify_lattice: invariant kernel has rank != 1");
        Sublattice zl{h, ker};
        Sublattice tx = orthogonal_complement(zl);
        if (tx.rank() != 2)
            throw std::logic_error("classify_lattice: complement rank != 2");

        IntMat combined(3, 3);
        for (std::size_t j = 0; j < 3; ++j) {
            combined(0, j) = tx.basis(0, j);
            combined(1, j) = tx.basis(1, j);
            combined(2, j) = ker(0, j);
        }

        CaseRecord rec;
        rec.n = static_cast<int>(cc.order);
        rec.tx = tx.lattice().gram();
        rec.l_square = zl.lattice().gram()(0, 0);
        rec.glue_index = index_in(Sublattice{h, combined}, full_sublattice(h));
        out.push_back(std::move(rec));
    }

    std::sort(out.begin(), out.end(), [](const CaseRecord& a, const CaseRecord& b) {
        return std::make_tuple(-a.n, a.l_square, a.tx.to_string(), a.glue_index) <
               std::make_tuple(-b.n, b.l_square, b.tx.to_string(), b.glue_index);
    });
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i].label = std::string(1, static_cast<char>('a' + i));
    return out;
}

std::vector<CaseRecord> run_all(const ReferenceData& ref, unsigned threads) {
    std::vector<std::vector<CaseRecord>> per(ref.lattices.size());
    parallel_for(ref.lattices.size(), threads, [&](std::size_t i) {
        const ReferenceLattice& entry = ref.lattices[i];
        std::vector<CaseRecord> records = classify_lattice(entry.lattice());
        if (records.size() != entry.cases.size())
            throw std::logic_error("run_all: case count mismatch for " + entry.key);
        for (CaseRecord& rec : records) {
            if (rec.n % 2 != 0)
                throw std::logic_error("run_all: odd cyclic order for " + entry.key);
            rec.lattice_key = entry.key;
            rec.group_no = entry.group_no;
        }
        attach_labels(entry, records, nullptr);
        per[i] = std::move(records);
    });

    std::vector<CaseRecord> out;
    for (auto& block : per)
        for (auto& rec : block) out.push_back(std::move(rec));
    return out;
}

VerificationReport verify_against_reference(const ReferenceData& ref, unsigned threads) {
    VerificationReport report;
    report.cases_checked = ref.case_count();

    std::vector<EntryResult> results(ref.lattices.size());
    parallel_for(ref.lattices.size(), threads,
                 [&](std::size_t i) { check_entry(ref.lattices[i], results[i]); });

    // aggregate per-lattice results in dataset order
    std::map<int, bool> row_ok;  // group_no -> all member checks passed
    for (std::size_t i = 0; i < ref.lattices.size(); ++i) {
        const ReferenceLattice& entry = ref.lattices[i];
        EntryResult& r = results[i];
        report.cases_matched += r.matched_cases;
        for (auto& m : r.mismatches) report.mismatches.push_back(std::move(m));
        for (auto& n : r.notes) report.notes.push_back(std::move(n));
        const bool entry_ok = r.row_ok && r.matched_cases == entry.cases.size();
        auto [it, inserted] = row_ok.emplace(entry.group_no, entry_ok);
        if (!inserted) it->second = it->second && entry_ok;
    }

    // two-lattice rows: same genus, not isometric
    std::map<int, std::vector<const ReferenceLattice*>> by_group;
    for (const auto& e : ref.lattices) by_group[e.group_no].push_back(&e);
    for (const auto& [no, members] : by_group) {
        if (members.size() < 2) continue;
        for (std::size_t a = 0; a + 1 < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b) {
                const Lattice la = members[a]->lattice(), lb = members[b]->lattice();
                if (!same_genus(la, lb)) {
                    report.mismatches.push_back(members[a]->key + " / " + members[b]->key +
                                                ": expected the same genus");
                    row_ok[no] = false;
                }
                if (is_isometric(la, lb).has_value()) {
                    report.mismatches.push_back(members[a]->key + " / " + members[b]->key +
                                                ": expected non-isometric lattices");
                    row_ok[no] = false;
                }
            }
    }

    report.rows_checked = row_ok.size();
    for (const auto& [no, ok] : row_ok) {
        (void)no;
        if (ok) ++report.rows_matched;
    }

    report.notes.push_back(
        "GAP ids and split flags are reference metadata, not verified by computation");
    return report;
}

void verify_coinvariant_file(const ReferenceData& ref, const CoinvariantFile& file,
                             VerificationReport& report) {
    const ReferenceLattice* entry = ref.find(file.label);
    if (!entry) {
        report.mismatches.push_back("coinvariants: unknown lattice key \"" + file.label + "\"");
        return;
    }
    auto flag = [&](const std::string& msg) {
        report.mismatches.push_back(entry->key + " (coinvariants): " + msg);
    };
    try {
        const ExtensionCheckReport r =
            unique_extension_check(entry->lattice(), file.data, IntMat::identity(3));
        if (r.skipped) {
            flag("check skipped unexpectedly: " + r.message);
            return;
        }
        bool ok = true;
        auto expect = [&](bool cond, const std::string& msg) {
            if (!cond) {
                flag(msg);
                ok = false;
            }
        };
        {
            std::ostringstream msg;
            msg << "#O(K) computed " << r.aut_order << ", expected "
                << entry->complement_aut_order;
            expect(r.aut_order == entry->complement_aut_order, msg.str());
        }
        {
            std::ostringstream msg;
            msg << "image of O(K) in O(q_K) has order " << r.image_order << ", expected "
                << entry->disc_aut_order;
            expect(r.image_order == entry->disc_aut_order, msg.str());
        }
        expect(r.surjective, "O(K) -> O(q_K) is not surjective");
        {
            std::ostringstream msg;
            msg << "kernel of O(K) -> O(q_K) has order " << r.kernel_order << ", expected #G_s = "
                << entry->group_order;
            expect(r.kernel_order == entry->group_order, msg.str());
        }
        expect(r.no_minus_two_vectors, "coinvariant lattice contains (-2)-vectors");
        expect(r.extension_exists, "no primitive extension along the supplied glue");
        expect(r.unique_up_to_kernel, "extension is not unique up to the kernel");
        if (ok)
            report.notes.push_back(entry->key +
                                   ": coinvariant data verified (orders, kernel = #G_s, image = "
                                   "#O(q), no (-2)-vectors, unique extension)");
    } catch (const std::exception& e) {
        flag(std::string("check failed: ") + e.what());
    }
}

}  // namespace k3cls

// qra: command-line front end for the DqRA toolkit.
//
// Exit codes: 0 success, 1 validation failure (or unmet precondition),
// 2 search failure, 3 I/O or parse failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qra/qra.hpp"

namespace {

constexpr int exit_validation = 1;
constexpr int exit_search = 2;
constexpr int exit_io = 3;

struct Exit {
    int code;
};

qra::Document load(const std::vector<std::string>& files) {
    qra::Document all;
    for (const auto& f : files) {
        std::string text;
        try {
            text = qra::read_file(f);
        } catch (const qra::Error& e) {
            std::cerr << e.what() << "\n";
            throw Exit{exit_io};
        }
        qra::Document d;
        try {
            d = qra::parse_document(text);
        } catch (const qra::ParseError& e) {
            std::cerr << f << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
            throw Exit{exit_io};
        }
        for (auto& a : d.algebras) all.algebras.push_back(std::move(a));
        for (auto& s : d.structures) all.structures.push_back(std::move(s));
        for (auto& a : d.assignments) all.assignments.push_back(std::move(a));
        for (auto& s : d.sketches) all.sketches.push_back(std::move(s));
    }
    return all;
}

const qra::FiniteDqRA& need_algebra(const qra::Document& d) {
    if (d.algebras.empty()) {
        std::cerr << "no algebra ('dqra' section) in input\n";
        throw Exit{exit_io};
    }
    return d.algebras.front();
}

const qra::RelStructure& need_structure(const qra::Document& d) {
    if (d.structures.empty()) {
        std::cerr << "no structure ('struct' section) in input\n";
        throw Exit{exit_io};
    }
    return d.structures.front();
}

qra::Embedding need_embedding(const qra::Document& d) {
    const auto& A = need_algebra(d);
    const auto& S = need_structure(d);
    if (d.assignments.empty()) {
        std::cerr << "no assignment ('assign' section) in input\n";
        throw Exit{exit_io};
    }
    try {
        return qra::resolve_assignment(d.assignments.front(), A, S);
    } catch (const qra::ParseError& e) {
        std::cerr << "assignment:" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
        throw Exit{exit_io};
    }
}

qra::ElementId need_element(const qra::FiniteDqRA& A, const std::string& name) {
    if (auto e = A.find(name)) return *e;
    std::cerr << "no element '" << name << "' in " << A.name() << "\n";
    throw Exit{exit_io};
}

std::string witness_names(const qra::FiniteDqRA& A, const std::vector<qra::ElementId>& w) {
    std::string s;
    for (const auto& e : w) s += (s.empty() ? "" : ", ") + A.label(e);
    return s;
}

class Output {
public:
    explicit Output(const std::string& path) : path_(path) {}

    std::ostream& stream() { return buf_; }

    void flush() {
        if (path_.empty() || path_ == "-") {
            std::cout << buf_.str();
            return;
        }
        std::ofstream out(path_, std::ios::binary);
        if (!out || !(out << buf_.str())) {
            std::cerr << "cannot write '" << path_ << "'\n";
            throw Exit{exit_io};
        }
    }

private:
    std::string path_;
    std::ostringstream buf_;
};

void print_report(std::ostream& os, const std::string& what, const qra::ValidationReport& r) {
    os << "# " << what << ": " << (r.ok() ? "valid" : "INVALID") << "\n" << r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toolkit for finite distributive quasi relation algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string output;
    app.add_option("-o,--output", output, "Write results to this file instead of standard output");

    std::vector<std::string> files;
    auto inputs = [&](CLI::App* sub) {
        sub->add_option("files", files, "Input files (algebra, structure, assignment sections)")->required();
    };

    auto* validate = app.add_subcommand("validate", "Check every algebra and structure in the input");
    inputs(validate);

    auto* psi = app.add_subcommand("psi-list", "List the positive symmetric idempotents");
    inputs(psi);

    std::string p_name;
    auto* contract_cmd = app.add_subcommand("contract", "Emit the contraction pAp");
    inputs(contract_cmd);
    contract_cmd->add_option("-p,--psi", p_name, "Positive symmetric idempotent p")->required();

    std::size_t cap = qra::default_full_dq_cap;
    auto* build = app.add_subcommand("build-dq", "Emit the full algebra Dq(E) of a structure");
    inputs(build);
    build->add_option("--cap", cap, "Maximum number of upsets");

    std::vector<std::string> relabel;
    std::size_t closure_cap = 4096;
    auto* closure = app.add_subcommand(
        "closure", "Close the relations of an 'assign' section under the Dq(E) operations; emits algebra, structure and assignment");
    inputs(closure);
    closure->add_option("--cap", closure_cap, "Maximum closure size");
    closure->add_option("--relabel", relabel, "Rename a result element: old=new (repeatable)");
    std::string closure_name = "closure";
    closure->add_option("--name", closure_name, "Name of the extracted algebra");

    auto* verify = app.add_subcommand("verify-embedding", "Check an assignment is an embedding");
    inputs(verify);

    std::size_t max_size = 3;
    std::size_t budget = qra::unlimited_budget;
    auto* find = app.add_subcommand(
        "find-embedding", "Search for a representation; uses the given structure, or all structures up to --max-size");
    inputs(find);
    find->add_option("--max-size", max_size, "Largest carrier to try when no structure is given");
    find->add_option("--budget", budget, "Search node budget");

    auto* quotient = app.add_subcommand("quotient", "Quotient representation of pAp from a representation of A");
    inputs(quotient);
    quotient->add_option("-p,--psi", p_name, "Positive symmetric idempotent p")->required();

    auto* nonfin = app.add_subcommand("check-nonfinrep", "Look for obstructions to finite representability");
    inputs(nonfin);

    bool dot_structure = false;
    auto* dot = app.add_subcommand("dot", "Emit Graphviz DOT for the algebra (or --structure)");
    inputs(dot);
    dot->add_flag("--structure", dot_structure, "Draw the first structure instead of the first algebra");

    auto* rec = app.add_subcommand("reconstruct", "Solve a sketch; further files supply the algebras named by 'distinct'");
    inputs(rec);

    CLI11_PARSE(app, argc, argv);

    Output out(output);
    auto& os = out.stream();
    try {
        const auto doc = load(files);
        int code = 0;

        if (*validate) {
            if (doc.algebras.empty() && doc.structures.empty()) {
                std::cerr << "nothing to validate\n";
                return exit_io;
            }
            for (const auto& A : doc.algebras) {
                auto r = qra::validate_dqra(A);
                if (r.passed(qra::laws::lattice)) r.merge(qra::check_di(A));
                print_report(os, "algebra " + A.name(), r);
                if (!r.ok()) code = exit_validation;
            }
            for (const auto& S : doc.structures) {
                const auto r = qra::validate_structure(S);
                print_report(os, "structure " + S.name, r);
                if (!r.ok()) code = exit_validation;
            }
        } else if (*psi) {
            const auto& A = need_algebra(doc);
            for (auto p : qra::psi_elements(A)) os << A.label(p) << "\n";
        } else if (*contract_cmd) {
            const auto& A = need_algebra(doc);
            const auto c = qra::contract(A, need_element(A, p_name));
            os << qra::emit_algebra(c.algebra);
            os << "# inclusion into " << A.name() << ":";
            for (std::size_t i = 0; i < c.members.size(); ++i) {
                os << " " << c.algebra.label(qra::ElementId(i)) << "->" << A.label(c.members[i]);
            }
            os << "\n";
        } else if (*build) {
            const auto& S = need_structure(doc);
            os << qra::emit_algebra(qra::full_dq(S, cap, "Dq_" + S.name));
        } else if (*closure) {
            const auto& S = need_structure(doc);
            if (doc.assignments.empty()) {
                std::cerr << "closure needs an 'assign' section listing the generators\n";
                return exit_io;
            }
            const qra::text::NameTable points(S.points(), S.labels);
            std::vector<qra::UpsetRel> gens;
            std::vector<std::string> names;
            for (const auto& e : doc.assignments.front().entries) {
                qra::BinRel r(S.points());
                for (const auto& [x, y] : e.pairs) r.insert(points.resolve(x, "point"), points.resolve(y, "point"));
                gens.emplace_back(S, r);
                names.push_back(e.element.text);
            }
            auto res = qra::dq_closure(S, gens, closure_cap, closure_name, names);
            auto t = res.algebra.tables();
            if (t.labels.empty()) {
                for (std::size_t i = 0; i < t.mult.size(); ++i) t.labels.push_back("r" + std::to_string(i));
            }
            for (const auto& spec : relabel) {
                const auto eq = spec.find('=');
                if (eq == std::string::npos) {
                    std::cerr << "--relabel expects old=new, got '" << spec << "'\n";
                    return exit_io;
                }
                bool hit = false;
                for (auto& l : t.labels) {
                    if (l == spec.substr(0, eq)) {
                        l = spec.substr(eq + 1);
                        hit = true;
                    }
                }
                if (!hit) {
                    std::cerr << "--relabel: no element '" << spec.substr(0, eq) << "'\n";
                    return exit_io;
                }
            }
            t.provenance = "relational reconstruction: closure of {" +
                           [&] {
                               std::string s;
                               for (const auto& n : names) s += (s.empty() ? "" : ", ") + n;
                               return s;
                           }() +
                           "} over structure " + S.name;
            const qra::FiniteDqRA A(std::move(t));
            const qra::Embedding e{A, S, res.relations};
            os << qra::emit_algebra(A) << "\n" << qra::emit_structure(S) << "\n" << qra::emit_assignment(e, A.name());
        } else if (*verify) {
            const auto e = need_embedding(doc);
            const auto r = qra::verify_embedding(e);
            print_report(os, "embedding", r);
            if (!r.ok()) code = exit_validation;
        } else if (*find) {
            const auto& A = need_algebra(doc);
            std::optional<qra::Embedding> found;
            qra::SearchStatus status{};
            if (!doc.structures.empty()) {
                auto r = qra::find_embedding(A, doc.structures.front(), budget);
                status = r.status;
                found = std::move(r.embedding);
                std::cerr << "nodes: " << r.nodes << "\n";
            } else {
                auto r = qra::find_embedding_up_to(A, max_size, budget);
                status = r.status;
                found = std::move(r.embedding);
                std::cerr << "structures checked: " << r.structures_checked << ", nodes: " << r.nodes << "\n";
            }
            std::cerr << "status: " << qra::to_string(status) << "\n";
            if (found) {
                os << qra::emit_structure(found->structure) << "\n" << qra::emit_assignment(*found, A.name());
            } else {
                code = exit_search;
            }
        } else if (*quotient) {
            const auto e = need_embedding(doc);
            const auto ind = qra::induced_embedding(e, need_element(e.algebra, p_name));
            os << "# classes:";
            for (std::size_t x = 0; x < e.structure.points(); ++x) {
                os << " " << e.structure.label(x) << "->" << ind.quotient.quotient.label(ind.quotient.class_of[x]);
            }
            os << "\n" << qra::emit_algebra(ind.contraction.algebra) << "\n" << qra::emit_structure(ind.quotient.quotient)
               << "\n" << qra::emit_assignment(ind.embedding, ind.contraction.algebra.name());
        } else if (*nonfin) {
            const auto& A = need_algebra(doc);
            if (auto b = qra::basic_obstruction(A)) {
                os << "not-finrep(basic, " << witness_names(A, b->witnesses()) << ")\n";
            } else if (auto c = qra::contraction_obstruction(A)) {
                os << "not-finrep(contraction, " << witness_names(A, c->witnesses()) << ")\n";
            } else {
                os << "finrep-unknown\n";
            }
        } else if (*dot) {
            os << (dot_structure ? qra::emit_dot(need_structure(doc)) : qra::emit_dot(need_algebra(doc)));
        } else if (*rec) {
            if (doc.sketches.empty()) {
                std::cerr << "no sketch in input\n";
                return exit_io;
            }
            const auto sk = qra::parse_sketch_section(doc.sketches.front());
            const auto r = qra::reconstruct(sk, doc.algebras);
            std::cerr << sk.name << ": " << r.solutions.size() << " labelled solution(s), " << r.classes()
                      << " isomorphism class(es), " << r.excluded << " excluded\n";
            if (!r.unique()) return exit_search;
            os << qra::emit_algebra(r.algebra());
        }
        out.flush();
        return code;
    } catch (const Exit& e) {
        return e.code;
    } catch (const qra::ParseError& e) {
        std::cerr << e.line() << ":" << e.column() << ": " << e.what() << "\n";
        return exit_io;
    } catch (const qra::CapExceeded& e) {
        std::cerr << e.what() << "\n";
        return exit_search;
    } catch (const qra::Error& e) {
        std::cerr << e.what() << "\n";
        return exit_validation;
    }
}

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "support.hpp"

using namespace qra;
using namespace qra::test;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// Runs the CLI inside the catalogue directory; stderr is folded into out.
Run qra_cli(const std::string& args) {
    const std::string cmd = "cd '" + std::string(QRA_DATA_DIR) + "' && '" + QRA_CLI + "' " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    while (auto n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "qra_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(Cli, ValidatePassesOnCatalogue) {
    const auto r = qra_cli("validate D6_3_5_2.rep");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("pass dp"), std::string::npos);
}

TEST(Cli, ValidateFailureExitsOne) {
    auto text = read_file(data_path("D6_3_5_2.qra"));
    text.replace(text.find("neg top 0 a b 1 bot"), 19, "neg bot 1 a b 0 top");
    const auto f = scratch("identity_neg.qra");
    std::ofstream(f) << text;
    const auto r = qra_cli("validate '" + f.string() + "'");
    EXPECT_EQ(r.code, 1) << r.out;
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, MissingFileExitsThree) {
    const auto r = qra_cli("validate no_such_file.qra");
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("no_such_file.qra"), std::string::npos);
}

TEST(Cli, ParseErrorExitsThree) {
    const auto f = scratch("broken.qra");
    std::ofstream(f) << "dqra x 2\norder\n1 1\n";
    EXPECT_EQ(qra_cli("validate '" + f.string() + "'").code, 3);
}

TEST(Cli, UnknownCommandRejected) { EXPECT_NE(qra_cli("frobnicate D3_1_1.qra").code, 0); }

TEST(Cli, PsiList) {
    const auto r = qra_cli("psi-list D6_3_5_2.qra");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1\na\nb\ntop\n");
}

TEST(Cli, ContractEmitsParsableAlgebra) {
    const auto r = qra_cli("contract -p a D6_3_5_2.qra");
    ASSERT_EQ(r.code, 0) << r.out;
    const auto A = parse_algebra(r.out);
    EXPECT_EQ(A.size(), 3u);
    EXPECT_TRUE(validate_dqra(A).ok());
    EXPECT_NE(r.out.find("# inclusion into D6_3_5_2"), std::string::npos);
}

TEST(Cli, ContractRejectsNonPsi) { EXPECT_EQ(qra_cli("contract -p 0 D6_3_5_2.qra").code, 1); }

TEST(Cli, ClosureMatchesShippedAlgebra) {
    const auto r = qra_cli("closure antichain4.gen");
    ASSERT_EQ(r.code, 0) << r.out;
    const auto d = parse_document(r.out);
    ASSERT_FALSE(d.algebras.empty());
    EXPECT_EQ(d.algebras[0].size(), 6u);
    EXPECT_TRUE(isomorphic(d.algebras[0], load_algebra("D6_3_5_2")));
}

TEST(Cli, BuildDqOnePoint) {
    const auto r = qra_cli("build-dq chain2.rep");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_TRUE(isomorphic(parse_algebra(r.out), load_algebra("chain2")));
}

TEST(Cli, BuildDqCapExceededExitsTwo) { EXPECT_EQ(qra_cli("build-dq antichain4.gen --cap 100").code, 2); }

TEST(Cli, VerifyEmbedding) {
    const auto r = qra_cli("verify-embedding D6_3_5_2.rep");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("valid"), std::string::npos);
}

TEST(Cli, FindEmbeddingFoundAndNotFound) {
    const auto found = qra_cli("find-embedding D6_3_5_2.rep");
    EXPECT_EQ(found.code, 0) << found.out;
    const auto none = qra_cli("find-embedding D3_1_1.qra --max-size 3");
    EXPECT_EQ(none.code, 2) << none.out;
    EXPECT_NE(none.out.find("status: not-found"), std::string::npos);
    const auto budget = qra_cli("find-embedding D6_3_5_2.rep --budget 1");
    EXPECT_EQ(budget.code, 2) << budget.out;
    EXPECT_NE(budget.out.find("budget-exhausted"), std::string::npos);
}

TEST(Cli, QuotientOutputParses) {
    const auto r = qra_cli("quotient -p a D6_3_5_2.rep");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("# classes: w->[w] x->[x] y->[w] z->[x]"), std::string::npos);
    const auto d = parse_document(r.out);
    ASSERT_EQ(d.structures.size(), 1u);
    EXPECT_EQ(d.structures[0].points(), 2u);
    const auto e = resolve_assignment(d.assignments.at(0), d.algebras.at(0), d.structures[0]);
    EXPECT_TRUE(verify_embedding(e).ok());
}

TEST(Cli, CheckNonfinrepVerdicts) {
    EXPECT_EQ(qra_cli("check-nonfinrep D3_1_1.qra").out, "not-finrep(basic, a)\n");
    EXPECT_EQ(qra_cli("check-nonfinrep D4_3_1.qra").out, "not-finrep(contraction, top, a)\n");
    EXPECT_EQ(qra_cli("check-nonfinrep D6_3_5_2.qra").out, "finrep-unknown\n");
}

TEST(Cli, DotBothKinds) {
    const auto alg = qra_cli("dot D6_3_5_2.qra");
    EXPECT_EQ(alg.code, 0);
    EXPECT_EQ(alg.out, emit_dot(load_algebra("D6_3_5_2")));
    const auto st = qra_cli("dot --structure D6_3_5_2.rep");
    EXPECT_EQ(st.code, 0);
    EXPECT_EQ(st.out, emit_dot(load_document("D6_3_5_2.rep").structures.at(0)));
}

TEST(Cli, OutputFlagWritesFile) {
    const auto f = scratch("psi.txt");
    std::filesystem::remove(f);
    const auto r = qra_cli("psi-list D6_3_5_2.qra -o '" + f.string() + "'");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(read_file(f.string()), "1\na\nb\ntop\n");
}

TEST(Cli, ReconstructMatchesShipped) {
    const auto r = qra_cli("reconstruct D4_1_1.sketch D4_1_2.qra");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.substr(r.out.find("dqra ")), read_file(data_path("D4_1_1.qra")));
    EXPECT_NE(qra_cli("reconstruct D4_1_1.sketch").code, 0);  // distinct algebra not supplied
}

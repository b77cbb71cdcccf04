// End-to-end checks of the command-line binary (path injected by CMake).
#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args, const fs::path& stdout_file) {
    const std::string cmd =
        std::string(HGPART_CLI_PATH) + " " + args + " > " + stdout_file.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(stdout_file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return {WEXITSTATUS(status), buffer.str()};
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / "hgpart_cli_test";
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

} // namespace

TEST_F(CliTest, PartitionSmoke) {
    const fs::path input = dir_ / "mini.hgr";
    std::ofstream(input) << "2 3\n1 2\n2 3\n";
    const fs::path output = dir_ / "mini.part";
    const auto res = run_cli("partition --input " + input.string() + " --output " +
                                 output.string() + " --seed 1",
                             dir_ / "out.txt");
    EXPECT_EQ(res.exit_code, 0);
    EXPECT_NE(res.stdout_text.find("cut="), std::string::npos);
    EXPECT_NE(res.stdout_text.find("levels="), std::string::npos);

    const std::string part = read_file(output);
    EXPECT_EQ(std::count(part.begin(), part.end(), '\n'), 3); // one line per vertex
}

TEST_F(CliTest, InvalidKRejected) {
    const fs::path input = dir_ / "mini.hgr";
    std::ofstream(input) << "2 3\n1 2\n2 3\n";
    const auto res = run_cli("partition --input " + input.string() + " --k 0", dir_ / "out.txt");
    EXPECT_NE(res.exit_code, 0);
}

TEST_F(CliTest, UnreadableInputRejected) {
    const auto res =
        run_cli("partition --input " + (dir_ / "absent.hgr").string(), dir_ / "out.txt");
    EXPECT_NE(res.exit_code, 0);
}

TEST_F(CliTest, DeterministicPartitionFiles) {
    const fs::path input = dir_ / "g.hgr";
    {
        std::ofstream out(input);
        out << "6 8\n";
        out << "1 2 3\n2 3\n3 4\n4 5 6\n6 7\n7 8\n";
    }
    const fs::path out1 = dir_ / "p1", out2 = dir_ / "p2";
    const auto r1 = run_cli("partition --input " + input.string() + " --output " + out1.string() +
                                " --seed 7 --k 2",
                            dir_ / "o1.txt");
    const auto r2 = run_cli("partition --input " + input.string() + " --output " + out2.string() +
                                " --seed 7 --k 2",
                            dir_ / "o2.txt");
    EXPECT_EQ(r1.exit_code, 0);
    EXPECT_EQ(r2.exit_code, 0);
    EXPECT_EQ(read_file(out1), read_file(out2));
}

TEST_F(CliTest, MatrixMarketRowNetInput) {
    const fs::path input = dir_ / "m.mtx";
    {
        std::ofstream out(input);
        out << "%%MatrixMarket matrix coordinate pattern general\n";
        out << "4 4 8\n1 1\n1 2\n2 2\n2 3\n3 3\n3 4\n4 4\n4 1\n";
    }
    const fs::path output = dir_ / "m.part";
    const auto res = run_cli("partition --input " + input.string() + " --output " +
                                 output.string(),
                             dir_ / "out.txt");
    EXPECT_EQ(res.exit_code, 0);
    const std::string part = read_file(output);
    EXPECT_EQ(std::count(part.begin(), part.end(), '\n'), 4);
}

TEST_F(CliTest, BenchSmokeAndByteIdenticalCsv) {
    const fs::path input = dir_ / "g.hgr";
    {
        std::ofstream out(input);
        out << "6 8\n1 2 3\n2 3\n3 4\n4 5 6\n6 7\n7 8\n";
    }
    const fs::path manifest = dir_ / "manifest.json";
    std::ofstream(manifest) << R"({"seed": 3, "repetitions": 2, "inputs": [")"
                            << input.string() << R"("]})";
    const fs::path csv1 = dir_ / "r1.csv", csv2 = dir_ / "r2.csv";
    const auto r1 = run_cli("bench --manifest " + manifest.string() + " --output " + csv1.string(),
                            dir_ / "o1.txt");
    const auto r2 = run_cli("bench --manifest " + manifest.string() + " --output " + csv2.string(),
                            dir_ / "o2.txt");
    EXPECT_EQ(r1.exit_code, 0);
    EXPECT_EQ(r2.exit_code, 0);
    const std::string csv = read_file(csv1);
    EXPECT_EQ(csv, read_file(csv2));
    EXPECT_NE(csv.find("# hgpart-bench-csv v1"), std::string::npos);
}

TEST_F(CliTest, VerifySmokeAndDeterminism) {
    const fs::path rep1 = dir_ / "v1.json", rep2 = dir_ / "v2.json";
    const auto r1 = run_cli("verify --instances 8 --seed 1 --output " + rep1.string(),
                            dir_ / "o1.txt");
    EXPECT_EQ(r1.exit_code, 0);
    const auto r2 = run_cli("verify --instances 8 --seed 1 --output " + rep2.string(),
                            dir_ / "o2.txt");
    EXPECT_EQ(r2.exit_code, 0);
    const std::string report = read_file(rep1);
    EXPECT_EQ(report, read_file(rep2));
    EXPECT_NE(report.find("\"all_pass\": true"), std::string::npos);
}

TEST_F(CliTest, VerifyRejectsZeroInstances) {
    const auto res = run_cli("verify --instances 0", dir_ / "out.txt");
    EXPECT_NE(res.exit_code, 0);
}

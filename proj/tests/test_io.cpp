#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include "gda/io.hpp"
#include "helpers.hpp"

namespace fs = std::filesystem;

class IoTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("gda_io_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string file(const std::string& name) const { return (dir_ / name).string(); }

    void write(const std::string& name, const std::string& content) {
        std::ofstream out(file(name));
        out << content;
    }

    fs::path dir_;
};

TEST_F(IoTest, EdgeListRoundTrip) {
    const auto g = testutil::path_graph(5, 0.1234567890123456789);
    gda::save_edge_list(file("g.el"), g);
    const auto h = gda::load_edge_list(file("g.el"));
    ASSERT_EQ(h.n(), g.n());
    ASSERT_EQ(h.m(), g.m());
    for (int k = 0; k < g.m(); ++k) {
        EXPECT_EQ(h.edges()[k].u, g.edges()[k].u);
        EXPECT_EQ(h.edges()[k].v, g.edges()[k].v);
        EXPECT_DOUBLE_EQ(h.edges()[k].w, g.edges()[k].w);
    }
}

TEST_F(IoTest, RandomGraphRoundTripBitExact) {
    gda::Rng rng(23);
    const auto g = testutil::random_connected_graph(40, 60, rng);
    gda::save_edge_list(file("r.el"), g);
    const auto h = gda::load_edge_list(file("r.el"));
    ASSERT_EQ(h.m(), g.m());
    for (int k = 0; k < g.m(); ++k)
        EXPECT_EQ(h.edges()[k].w, g.edges()[k].w) << "weight not bit-identical at edge " << k;
}

TEST_F(IoTest, CommentsAndBlankLinesIgnored) {
    write("c.el", "# a comment\n\n2 1\n# another\n0 1 0.5\n\n");
    const auto g = gda::load_edge_list(file("c.el"));
    EXPECT_EQ(g.n(), 2);
    EXPECT_EQ(g.m(), 1);
}

TEST_F(IoTest, HeaderCountMismatch) {
    write("bad.el", "5 4\n0 1 1\n1 2 1\n2 3 1\n");
    EXPECT_THROW(gda::load_edge_list(file("bad.el")), gda::Error);
}

TEST_F(IoTest, TooManyEdges) {
    write("bad2.el", "3 1\n0 1 1\n1 2 1\n");
    try {
        gda::load_edge_list(file("bad2.el"));
        FAIL() << "expected parse error";
    } catch (const gda::Error& e) {
        EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
    }
}

TEST_F(IoTest, NegativeWeightReportsLineNumber) {
    write("neg.el", "3 2\n0 1 1.0\n1 2 -0.5\n");
    try {
        gda::load_edge_list(file("neg.el"));
        FAIL() << "expected build error";
    } catch (const gda::Error& e) {
        EXPECT_NE(std::string(e.what()).find("neg.el"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("non-positive"), std::string::npos) << e.what();
    }
}

TEST_F(IoTest, GarbledEdgeLineReportsLineNumber) {
    write("garbled.el", "3 2\n0 1 1.0\n1 two 0.5\n");
    try {
        gda::load_edge_list(file("garbled.el"));
        FAIL() << "expected parse error";
    } catch (const gda::Error& e) {
        EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
    }
}

TEST_F(IoTest, MissingFile) {
    EXPECT_THROW(gda::load_edge_list(file("nope.el")), gda::Error);
}

TEST_F(IoTest, MissingHeader) {
    write("empty.el", "# only comments\n");
    EXPECT_THROW(gda::load_edge_list(file("empty.el")), gda::Error);
}

TEST_F(IoTest, CoordsRoundTrip) {
    const std::vector<gda::Coord> coords{{0.125, 0.25}, {0.3333333333333333, 1.0}, {-2.5, 3.75}};
    gda::save_coords(file("c.xy"), coords);
    const auto back = gda::load_coords(file("c.xy"), 3);
    EXPECT_EQ(back, coords);
}

TEST_F(IoTest, CoordsRejectDuplicates) {
    write("dup.xy", "0 1 2\n0 3 4\n");
    EXPECT_THROW(gda::load_coords(file("dup.xy"), 2), gda::Error);
}

TEST_F(IoTest, SignalRoundTripBitExact) {
    gda::Rng rng(29);
    std::vector<double> x(100);
    for (auto& v : x) v = rng.gaussian();
    gda::save_signal(file("x.sig"), x);
    const auto back = gda::load_signal(file("x.sig"));
    ASSERT_EQ(back.size(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(back[i], x[i]);
}

TEST_F(IoTest, SamplingSetRoundTrip) {
    gda::SamplingFile f;
    f.t_hat = 0.037109375;
    f.valid = true;
    f.certified_lb = 0.0123456789;
    f.sample_set = {4, 0, 7};
    gda::save_sampling_set(file("s.set"), f);
    const auto back = gda::load_sampling_set(file("s.set"));
    EXPECT_EQ(back.t_hat, f.t_hat);
    EXPECT_EQ(back.valid, f.valid);
    EXPECT_EQ(back.certified_lb, f.certified_lb);
    EXPECT_EQ(back.sample_set, f.sample_set);
}

TEST_F(IoTest, SamplingSetHeaderRequired) {
    write("noheader.set", "0\n1\n");
    EXPECT_THROW(gda::load_sampling_set(file("noheader.set")), gda::Error);
}

TEST_F(IoTest, SamplingSetEmptySelection) {
    write("empty.set", "# T_hat=0 valid=0 certified_lb=0\n");
    const auto back = gda::load_sampling_set(file("empty.set"));
    EXPECT_TRUE(back.sample_set.empty());
    EXPECT_FALSE(back.valid);
}

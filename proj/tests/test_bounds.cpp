#include <gtest/gtest.h>

#include <sstream>

#include "cdc/bounds.hpp"
#include "cdc/combinatorics.hpp"

using namespace cdc;

namespace {

struct Grid {
    unsigned q, n, k, d;
};

// q in {2,3}, d in {2,4}, d <= k <= n <= 6.
std::vector<Grid> parallel_grid() {
    std::vector<Grid> g;
    for (unsigned q : {2u, 3u})
        for (unsigned d : {2u, 4u})
            for (unsigned k = d; k <= 6; ++k)
                for (unsigned n = k; n <= 6; ++n) g.push_back({q, n, k, d});
    return g;
}

}  // namespace

TEST(LiftedSize, Examples) {
    EXPECT_EQ(lifted_mrd_size(2, 4, 4, 2), 4096);
    EXPECT_EQ(lifted_mrd_size(2, 2, 2, 1), 16);
    for (unsigned q : {2u, 3u, 5u})
        for (unsigned n = 1; n <= 6; ++n)
            for (unsigned k = 1; k <= n; ++k) EXPECT_EQ(lifted_mrd_size(q, n, k, k), ipow(q, n));
    EXPECT_THROW(lifted_mrd_size(2, 3, 4, 2), InvalidParameter);
    EXPECT_THROW(lifted_mrd_size(2, 4, 4, 0), InvalidParameter);
}

TEST(TwoBlock, Examples) {
    EXPECT_EQ(two_block_lower_bound(2, 4, 4, 4).value, 4621);
    EXPECT_EQ(two_block_lower_bound(2, 5, 5, 4).value, 1178311);
    EXPECT_EQ(two_block_lower_bound(2, 2, 2, 2).value, 25);
    const auto r = two_block_lower_bound(2, 4, 4, 4);
    EXPECT_EQ(r.formula, Formula::thm2);
    EXPECT_EQ(r.params.ambient, 8u);
    EXPECT_EQ(r.params.distance, 4u);
    EXPECT_EQ(r.params.dim, 4u);
}

TEST(TwoBlock, Errors) {
    EXPECT_THROW(two_block_lower_bound(2, 4, 4, 3), InvalidParameter);
    EXPECT_THROW(two_block_lower_bound(2, 3, 4, 2), InvalidParameter);
    EXPECT_THROW(two_block_lower_bound(2, 4, 3, 4), InvalidParameter);
    EXPECT_THROW(two_block_lower_bound(1, 4, 4, 2), InvalidParameter);
}

TEST(Parallel, PublishedValues) {
    EXPECT_EQ(parallel_lower_bound(2, 5, 5, 4, 1).value, parse_decimal("1252379805361"));
    EXPECT_EQ(parallel_lower_bound(2, 6, 5, 4, 1).value, parse_decimal("19843523036401"));
    EXPECT_EQ(parallel_lower_bound(3, 5, 5, 4, 1).value, parse_decimal("12399152568347096641"));
    const auto r = parallel_lower_bound(2, 5, 5, 4, 1);
    EXPECT_EQ(r.params.ambient, 15u);
    EXPECT_EQ(r.formula, Formula::thm3);
}

TEST(Parallel, SmallConstructionCount) {
    // Three blocks of the (n,k,d,s) = (2,2,2,1) layout: 16*16, 9*16, 9*9.
    EXPECT_EQ(parallel_lower_bound(2, 2, 2, 2, 1).value, 481);
}

TEST(Parallel, Errors) {
    EXPECT_THROW(parallel_lower_bound(2, 5, 5, 5, 1), InvalidParameter);
    EXPECT_THROW(parallel_lower_bound(2, 4, 5, 4, 1), InvalidParameter);
}

TEST(BoundsProperty, DepthZeroIsTwoBlock) {
    for (const auto& g : parallel_grid())
        ASSERT_EQ(parallel_lower_bound(g.q, g.n, g.k, g.d, 0).value, two_block_lower_bound(g.q, g.n, g.k, g.d).value);
}

TEST(BoundsProperty, StrictlyIncreasingInDepth) {
    for (const auto& g : parallel_grid()) {
        if (restricted_rank_count(g.q, g.k, g.k, g.d) < 1) continue;
        for (unsigned s = 0; s < 4; ++s)
            ASSERT_LT(parallel_lower_bound(g.q, g.n, g.k, g.d, s).value,
                      parallel_lower_bound(g.q, g.n, g.k, g.d, s + 1).value);
    }
}

TEST(BoundsProperty, LowerBoundsBelowJohnson) {
    for (const auto& g : parallel_grid())
        for (unsigned s = 0; s <= 2; ++s) {
            const auto lb = parallel_lower_bound(g.q, g.n, g.k, g.d, s);
            ASSERT_GE(lb.value, 1);
            const auto ub = johnson_upper(g.q, lb.params.ambient, g.k, g.d / 2);
            ASSERT_LE(lb.value, ub.value) << g.q << " " << g.n << " " << g.k << " " << g.d << " s=" << s;
        }
}

TEST(BoundsProperty, TwoBlockBeatsLifted) {
    for (const auto& g : parallel_grid())
        ASSERT_GT(two_block_lower_bound(g.q, g.n, g.k, g.d).value, lifted_mrd_size(g.q, g.n, g.k, g.d / 2));
}

TEST(Johnson, Examples) {
    EXPECT_EQ(johnson_upper(2, 6, 3, 2).value, 93);
    EXPECT_EQ(johnson_upper(2, 8, 4, 2).value, 6477);
    for (unsigned q : {2u, 3u})
        for (unsigned n = 1; n <= 8; ++n)
            for (unsigned k = 1; k <= n; ++k) EXPECT_EQ(johnson_upper(q, n, k, 1).value, gaussian_binomial(n, k, q));
    EXPECT_EQ(johnson_upper(2, 6, 3, 2).params.distance, 4u);
    EXPECT_THROW(johnson_upper(2, 3, 4, 2), InvalidParameter);
    EXPECT_THROW(johnson_upper(2, 6, 3, 0), InvalidParameter);
}

TEST(IteratedJohnson, Examples) {
    EXPECT_EQ(iterated_johnson_upper(2, 8, 6, 4).value, 306);
    for (unsigned q : {2u, 3u})
        for (unsigned d : {2u, 4u, 6u})
            EXPECT_EQ(iterated_johnson_upper(q, 10, d, d / 2, BigCount(12345)).value, 12345);
    // The partial-spread base A_2(12,4,2) = 1365 coincides with the default here.
    EXPECT_EQ(iterated_johnson_upper(2, 13, 4, 3).value, 1597245);
    EXPECT_EQ(iterated_johnson_upper(2, 13, 4, 3, BigCount(1365)).value, 1597245);
    EXPECT_THROW(iterated_johnson_upper(2, 8, 5, 4), InvalidParameter);
    EXPECT_THROW(iterated_johnson_upper(2, 8, 6, 2), InvalidParameter);
    EXPECT_THROW(iterated_johnson_upper(2, 8, 6, 4, BigCount(-1)), InvalidParameter);
}

TEST(IteratedJohnson, KnownMaximaFitBelow) {
    EXPECT_LE(257, iterated_johnson_upper(2, 8, 6, 4).value);
    EXPECT_LE(77, johnson_upper(2, 6, 3, 2).value);
}

TEST(Table, EmptyInput) { EXPECT_TRUE(build_table({}).empty()); }

TEST(Table, ImprovementFlag) {
    const std::vector<TableRow> rows{{2, 5, 5, 4, 1, parse_decimal("1252379805361"), parse_decimal("1235787711790")}};
    const auto out = build_table(rows);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].matches_expected(), true);
    EXPECT_EQ(out[0].improves(), true);
}

TEST(Table, RowErrorsAreCollected) {
    const std::vector<TableRow> rows{{2, 5, 5, 3, 1, {}, {}}, {2, 2, 2, 2, 0, BigCount(25), {}}};
    const auto out = build_table(rows);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_FALSE(out[0].result.has_value());
    EXPECT_FALSE(out[0].error.empty());
    EXPECT_EQ(out[1].matches_expected(), true);
    EXPECT_FALSE(out[1].improves().has_value());
}

TEST(ReferenceTable, Parsing) {
    std::istringstream in("# comment\n\n2, 15, 4, 5, 1252379805361, 1235787711790\r\n");
    const auto rows = read_reference_table(in);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].ambient, 15u);
    EXPECT_EQ(rows[0].distance, 4u);
    EXPECT_EQ(rows[0].dim, 5u);
    EXPECT_EQ(rows[0].old_value, parse_decimal("1235787711790"));
    std::istringstream bad("2,15,4,5,1\n");
    EXPECT_THROW(read_reference_table(bad), InvalidParameter);
    std::istringstream junk("2,15,4,5,12x,1\n");
    EXPECT_THROW(read_reference_table(junk), InvalidParameter);
    EXPECT_THROW(load_reference_table("/nonexistent/table.csv"), InvalidParameter);
}

TEST(ReferenceTable, ShippedDataReproduces) {
    const auto refs = load_reference_table(CDC_TABLE1_PATH);
    ASSERT_EQ(refs.size(), 56u);
    const auto rows = table_rows_from_reference(refs);
    for (const auto& e : build_table(rows)) {
        ASSERT_TRUE(e.result.has_value()) << e.error;
        EXPECT_EQ(e.matches_expected(), true) << "A_" << e.row.q << "(" << e.result->params.ambient << ","
                                              << e.row.d << "," << e.row.k << ")";
    }
}

TEST(ReferenceTable, TailWidthFromDepth) {
    const std::vector<ReferenceRow> refs{{2, 15, 4, 5, 0, 0}};
    EXPECT_EQ(table_rows_from_reference(refs, 1)[0].n, 5u);
    EXPECT_EQ(table_rows_from_reference(refs, 0)[0].n, 10u);
    EXPECT_THROW(table_rows_from_reference(refs, 3), InvalidParameter);
}

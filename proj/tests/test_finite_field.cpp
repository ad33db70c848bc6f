#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "cdc/finite_field.hpp"
#include "oracles.hpp"

using namespace cdc;

namespace {

std::vector<Field> small_fields() {
    std::vector<Field> out;
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) out.push_back(Field::of_order(q));
    return out;
}

}  // namespace

TEST(Field, BinaryUnit) {
    const Field f(2, 1);
    EXPECT_EQ(f.mul(1, 1), 1);
    EXPECT_EQ(f.inv(1), 1);
}

TEST(Field, ZeroAbsorbs) {
    for (const auto& f : small_fields())
        for (unsigned a = 0; a < f.order(); ++a) EXPECT_EQ(f.mul(static_cast<Elem>(a), 0), 0) << f.name();
}

TEST(Field, Gf4RootSquaredIsRootPlusOne) {
    const Field f = Field::of_order(4);
    ASSERT_EQ(f.modulus(), (std::vector<unsigned>{1, 1, 1}));
    const FieldElem alpha = f.element(2), one = f.one();
    EXPECT_EQ(alpha * alpha, alpha + one);
    EXPECT_EQ(alpha.inverse(), alpha + one);
}

TEST(Field, Gf5InverseOfTwo) {
    const Field f = Field::of_order(5);
    EXPECT_EQ(f.inv(2), 3);
    EXPECT_EQ(f.element(2).inverse(), f.element(3));
}

TEST(Field, Errors) {
    const Field f = Field::of_order(4);
    EXPECT_THROW(f.inv(0), DivisionByZero);
    EXPECT_THROW(f.element(4), InvalidElement);
    EXPECT_THROW(f.zero().inverse(), DivisionByZero);
    EXPECT_THROW(f.one() / f.zero(), DivisionByZero);
    EXPECT_THROW(f.one() + Field::of_order(2).one(), IncompatibleField);
    EXPECT_THROW(f.one() * Field::of_order(8).one(), IncompatibleField);
    EXPECT_THROW(Field::of_order(6), InvalidParameter);
    EXPECT_THROW(Field::of_order(1), InvalidParameter);
    EXPECT_THROW(Field::of_order(17), InvalidParameter);
    EXPECT_THROW(Field(2, 9), InvalidParameter);
}

TEST(Field, SupportedOrders) {
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) EXPECT_TRUE(is_supported_base_order(q));
    for (unsigned q : {0u, 1u, 6u, 10u, 11u, 16u}) {
        EXPECT_FALSE(is_supported_base_order(q));
        EXPECT_THROW(require_supported_base_order(q), InvalidParameter);
    }
}

TEST(Field, SameTablesForEqualParameters) {
    const Field a(3, 2), b = Field::of_order(9);
    EXPECT_TRUE(a == b);
    EXPECT_EQ(a.modulus(), b.modulus());
    for (unsigned x = 0; x < 9; ++x)
        for (unsigned y = 0; y < 9; ++y) EXPECT_EQ(a.mul(x, y), b.mul(x, y));
}

TEST(FieldProperty, AxiomsExhaustive) {
    for (const auto& f : small_fields()) {
        const unsigned q = f.order();
        SCOPED_TRACE(f.name());
        for (unsigned a = 0; a < q; ++a) {
            EXPECT_EQ(f.add(a, 0), a);
            EXPECT_EQ(f.mul(a, 1), a);
            EXPECT_EQ(f.add(a, f.neg(a)), 0);
            if (a != 0) {
                EXPECT_EQ(f.mul(a, f.inv(a)), 1);
            }
            for (unsigned b = 0; b < q; ++b) {
                EXPECT_EQ(f.add(a, b), f.add(b, a));
                EXPECT_EQ(f.mul(a, b), f.mul(b, a));
                for (unsigned c = 0; c < q; ++c) {
                    ASSERT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

// Multiplication tables agree with schoolbook polynomial multiplication modulo the stored modulus,
// and addition is digit-wise mod p.
TEST(FieldProperty, TablesMatchPolynomialArithmetic) {
    for (const auto& [p, e] : std::vector<std::pair<unsigned, unsigned>>{
             {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 7}, {2, 8}, {3, 1}, {3, 2}, {3, 3},
             {3, 4}, {3, 5}, {5, 1}, {5, 2}, {5, 3}, {7, 1}, {7, 2}, {11, 2}, {13, 2}}) {
        const Field f(p, e);
        SCOPED_TRACE(f.name());
        const auto& mod = f.modulus();
        for (unsigned a = 0; a < f.order(); ++a)
            for (unsigned b = 0; b < f.order(); ++b) {
                ASSERT_EQ(f.mul(a, b), oracle::poly_mulmod(a, b, p, mod));
                auto da = oracle::poly_digits(a, p, e), db = oracle::poly_digits(b, p, e);
                for (unsigned i = 0; i < e; ++i) da[i] = (da[i] + db[i]) % p;
                ASSERT_EQ(f.add(a, b), oracle::poly_index(da, p));
            }
    }
}

TEST(FieldProperty, ModuliIrreducibleAndPrimitive) {
    for (const auto& c : detail::kConwayTable) {
        const Field f(c.p, c.e);
        SCOPED_TRACE(f.name());
        EXPECT_TRUE(oracle::is_irreducible(f.modulus(), c.p));
        // x has multiplicative order q - 1: walk powers of x with the oracle multiplier.
        const unsigned x = c.e == 1 ? (c.p - f.modulus()[0]) % c.p : c.p;
        unsigned v = 1, order = 0;
        do {
            v = oracle::poly_mulmod(v, x, c.p, f.modulus());
            ++order;
        } while (v != 1 && order <= f.order());
        EXPECT_EQ(order, f.order() - 1);
    }
}

TEST(FieldProperty, FermatLittle) {
    for (const auto& f : small_fields())
        for (unsigned a = 1; a < f.order(); ++a) EXPECT_EQ(f.pow(a, f.order() - 1), 1);
}

TEST(Extension, SubfieldEmbeddingsExist) {
    for (const auto& c : detail::kConwayTable)
        for (unsigned d = 1; d < c.e; ++d)
            if (c.e % d == 0) {
                EXPECT_NO_THROW(ExtensionField(Field(c.p, d), c.e / d)) << c.p << "^" << c.e;
            }
}

TEST(Extension, RejectsTooLargeAndDependentBases) {
    EXPECT_THROW(ExtensionField(Field::of_order(4), 5), InvalidParameter);
    EXPECT_THROW(ExtensionField(Field::of_order(2), 0), InvalidParameter);
    EXPECT_THROW(ExtensionField(Field::of_order(2), 2, std::vector<Elem>{1, 1}), InvalidParameter);
    EXPECT_THROW(ExtensionField(Field::of_order(2), 2, std::vector<Elem>{1}), InvalidParameter);
}

TEST(ExtensionProperty, FrobeniusIsAutomorphismFixingBase) {
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u})
        for (unsigned m = 1;; ++m) {
            std::uint64_t Q = 1;
            for (unsigned i = 0; i < m; ++i) Q *= q;
            if (Q > 256) break;
            const ExtensionField ext(Field::of_order(q), m);
            const Field& F = ext.field();
            SCOPED_TRACE(F.name() + " over GF(" + std::to_string(q) + ")");
            for (unsigned a = 0; a < Q; ++a) {
                ASSERT_EQ(ext.frobenius(a, m), a);
                for (unsigned b = 0; b < Q; ++b) {
                    ASSERT_EQ(ext.frobenius(F.add(a, b)), F.add(ext.frobenius(a), ext.frobenius(b)));
                    ASSERT_EQ(ext.frobenius(F.mul(a, b)), F.mul(ext.frobenius(a), ext.frobenius(b)));
                }
            }
            std::vector<bool> hit(Q, false);
            for (unsigned a = 0; a < Q; ++a) hit[ext.frobenius(a)] = true;
            EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](bool h) { return h; }));
            for (unsigned c = 0; c < q; ++c) EXPECT_EQ(ext.frobenius(ext.embed(c)), ext.embed(c));
        }
}

TEST(ExtensionProperty, EmbeddingIsHomomorphism) {
    const ExtensionField ext(Field::of_order(4), 3);
    const Field& s = ext.base();
    const Field& F = ext.field();
    for (unsigned a = 0; a < 4; ++a)
        for (unsigned b = 0; b < 4; ++b) {
            EXPECT_EQ(ext.embed(s.add(a, b)), F.add(ext.embed(a), ext.embed(b)));
            EXPECT_EQ(ext.embed(s.mul(a, b)), F.mul(ext.embed(a), ext.embed(b)));
        }
}

TEST(ExtensionProperty, ExpandCombineRoundTrip) {
    for (auto [q, m] : std::vector<std::pair<unsigned, unsigned>>{{2, 4}, {3, 3}, {4, 2}, {2, 8}, {5, 3}}) {
        const ExtensionField ext(Field::of_order(q), m);
        for (unsigned x = 0; x < ext.field().order(); ++x) {
            const auto c = ext.expand(x);
            ASSERT_EQ(c.size(), m);
            ASSERT_EQ(ext.combine(c), x);
        }
    }
}

TEST(Linearized, IdentityPolynomial) {
    const Field f = Field::of_order(8);
    const std::vector<FieldElem> c{f.one()};
    for (unsigned x = 0; x < 8; ++x) EXPECT_EQ(linearized_eval(c, f.element(x), 2), f.element(x));
}

TEST(Linearized, FrobeniusOnGf4) {
    const Field f = Field::of_order(4);
    const std::vector<FieldElem> c{f.zero(), f.one()};
    EXPECT_EQ(linearized_eval(c, f.element(2), 2), f.element(3));
}

TEST(Linearized, Errors) {
    const Field f = Field::of_order(4);
    EXPECT_THROW(linearized_eval({}, f.one(), 2), InvalidParameter);
    EXPECT_THROW(linearized_eval(std::vector<FieldElem>{f.one()}, f.one(), 3), InvalidParameter);
    EXPECT_THROW(linearized_eval(std::vector<FieldElem>{Field::of_order(2).one()}, f.one(), 2), IncompatibleField);
}

TEST(LinearizedProperty, LinearOverBaseField) {
    const ExtensionField ext(Field::of_order(3), 3);
    const Field& F = ext.field();
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<unsigned> el(0, F.order() - 1), sc(0, 2);
    for (int t = 0; t < 200; ++t) {
        const std::vector<FieldElem> c{F.element(el(rng)), F.element(el(rng)), F.element(el(rng))};
        const FieldElem x = F.element(el(rng)), y = F.element(el(rng));
        const FieldElem a = F.element(ext.embed(static_cast<Elem>(sc(rng))));
        EXPECT_EQ(linearized_eval(c, x + y, 3), linearized_eval(c, x, 3) + linearized_eval(c, y, 3));
        EXPECT_EQ(linearized_eval(c, a * x, 3), a * linearized_eval(c, x, 3));
    }
}

#include <gtest/gtest.h>

#include <random>

#include "cptk/error.hpp"
#include "cptk/words.hpp"

using namespace cptk;

namespace {

// Enumerates X* by length, then position by position in rank order: the
// definition of the order, independent of the odometer in Alphabet::succ.
std::vector<Word> enumerate_by_length(const Alphabet& x, std::size_t max_len) {
    std::vector<Word> out{Word()};
    std::vector<Word> layer{Word()};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const Word& w : layer)
            for (char s : x.symbols()) next.push_back(w + s);
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

} // namespace

TEST(Words, CompareExamples) {
    Alphabet ab("ab");
    EXPECT_TRUE(ab.compare("", "a") < 0);
    EXPECT_TRUE(ab.compare("ab", "ba") < 0);
    EXPECT_TRUE(ab.compare("bb", "aaa") < 0);
    EXPECT_TRUE(ab.compare("ab", "ab") == 0);
}

TEST(Words, CompareRejectsForeignSymbols) {
    Alphabet ab("ab");
    EXPECT_THROW(ab.compare("ac", "ab"), AlphabetError);
}

TEST(Words, SuccExamples) {
    Alphabet ab("ab");
    EXPECT_EQ(ab.succ(""), "a");
    EXPECT_EQ(ab.succ("b"), "aa");
    EXPECT_EQ(ab.succ("ab"), "ba");
}

TEST(Words, LexOrdExamples) {
    Alphabet ab("ab");
    EXPECT_EQ(ab.lex(0), "");
    EXPECT_EQ(ab.lex(3), "aa");
    EXPECT_EQ(ab.lex(6), "bb");
    EXPECT_EQ(ab.ord(""), 0u);
    EXPECT_EQ(ab.ord("aa"), 3u);
    EXPECT_EQ(ab.ord(ab.lex(10000)), 10000u);
}

TEST(Words, LexMatchesEnumerationOracle) {
    for (std::string sym : {"a", "ab", "abc", "xyzw"}) {
        Alphabet x(sym);
        auto all = enumerate_by_length(x, sym.size() == 1 ? 40 : 6);
        for (std::uint64_t i = 0; i < all.size(); ++i) {
            ASSERT_EQ(x.lex(i), all[i]) << sym << " rank " << i;
            ASSERT_EQ(x.ord(all[i]), i);
        }
    }
}

TEST(Words, SuccIncrementsOrdByOne) {
    Alphabet abc("abc");
    Word w;
    for (std::uint64_t i = 0; i < 5000; ++i) {
        ASSERT_EQ(abc.ord(w), i);
        Word v = abc.succ(w);
        ASSERT_TRUE(abc.compare(w, v) < 0);
        w = std::move(v);
    }
}

TEST(Words, RandomWordsRoundTrip) {
    std::mt19937_64 rng(0);
    for (std::string sym : {"ab", "abc"}) {
        Alphabet x(sym);
        std::uniform_int_distribution<std::size_t> len(0, 12), pick(0, sym.size() - 1);
        for (int t = 0; t < 2000; ++t) {
            Word w;
            for (std::size_t k = len(rng); k > 0; --k) w += sym[pick(rng)];
            ASSERT_EQ(x.lex(x.ord(w)), w);
        }
    }
}

TEST(Words, OrderIsomorphism) {
    Alphabet ab("ab");
    for (std::uint64_t i = 0; i < 200; ++i)
        for (std::uint64_t j = 0; j < 200; ++j)
            ASSERT_EQ(ab.compare(ab.lex(i), ab.lex(j)) < 0, i < j);
}

TEST(Words, PermutedAlphabetChangesOrder) {
    Alphabet ba = Alphabet::permuted("ab", {1, 0});
    EXPECT_EQ(ba.symbols(), "ba");
    EXPECT_EQ(ba.lex(1), "b");
    EXPECT_TRUE(ba.compare("ab", "ba") > 0);
    EXPECT_THROW(Alphabet::permuted("ab", {0, 0}), AlphabetError);
}

TEST(Words, InvalidAlphabets) {
    EXPECT_THROW(Alphabet(""), AlphabetError);
    EXPECT_THROW(Alphabet("aba"), AlphabetError);
}

TEST(Words, OrdOverflowIsReported) {
    Alphabet ab("ab");
    EXPECT_THROW(ab.ord(Word(70, 'b')), std::overflow_error);
    EXPECT_NO_THROW(ab.ord(Word(62, 'b')));
}

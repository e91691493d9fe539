#include "causalcheck/history.hpp"

#include <gtest/gtest.h>

#include "causalcheck/error.hpp"
#include "support/samples.hpp"

namespace causalcheck {
namespace {

using testing::make_history;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

Operation op(std::string id, std::string process, std::int64_t index, OpKind kind,
             std::string var, std::optional<std::int64_t> value) {
  return {std::move(id), std::move(process), index, kind, std::move(var), value};
}

TEST(History, SampleBDerivesPoAndWr) {
  const History h = make_history({{"w(x,1)", "r(x,2)"}, {"w(x,2)", "r(x,1)"}});
  ASSERT_EQ(h.size(), 4u);
  const std::size_t w1 = *h.find("id0");
  const std::size_t r2 = *h.find("id1");
  const std::size_t w2 = *h.find("id2");
  const std::size_t r1 = *h.find("id3");
  EXPECT_TRUE(h.po().contains(w1, r2));
  EXPECT_TRUE(h.po().contains(w2, r1));
  EXPECT_EQ(h.po().pair_count(), 2u);
  EXPECT_TRUE(h.wr().contains(w2, r2));
  EXPECT_TRUE(h.wr().contains(w1, r1));
  EXPECT_EQ(h.wr().pair_count(), 2u);
  EXPECT_EQ(h.wr_source(r2), w2);
  EXPECT_TRUE(h.is_executed());
}

TEST(History, PoIsTransitive) {
  const History h = make_history({{"w(x,1)", "w(x,2)", "w(x,3)"}});
  EXPECT_TRUE(h.po().contains(0, 2));
  EXPECT_EQ(h.po().pair_count(), 3u);
}

TEST(History, InitialAndThinAirReadsHaveNoSource) {
  const History h = make_history({{"r(x,0)", "r(x,7)"}});
  EXPECT_FALSE(h.wr_source(0).has_value());
  EXPECT_FALSE(h.wr_source(1).has_value());
  EXPECT_TRUE(h.op(0).is_initial_read());
  EXPECT_TRUE(h.wr().empty());
}

TEST(History, EmptyHistory) {
  const History h = History::from_operations({});
  EXPECT_TRUE(h.empty());
  EXPECT_TRUE(h.is_executed());
  EXPECT_TRUE(po_maximal(h).empty());
}

TEST(History, RejectsDuplicateWrite) {
  EXPECT_EQ(code_of([] { make_history({{"w(x,1)"}, {"w(x,1)"}}); }), ErrorCode::DuplicateWrite);
}

TEST(History, RejectsDuplicateId) {
  EXPECT_EQ(code_of([] {
              History::from_operations({op("a", "p1", 0, OpKind::Write, "x", 1),
                                        op("a", "p2", 0, OpKind::Write, "x", 2)});
            }),
            ErrorCode::DuplicateId);
}

TEST(History, RejectsMalformedOperations) {
  EXPECT_EQ(code_of([] { History::from_operations({op("a", "p1", 0, OpKind::Write, "x", 0)}); }),
            ErrorCode::MalformedInput);
  EXPECT_EQ(code_of([] {
              History::from_operations({op("a", "p1", 0, OpKind::Write, "x", std::nullopt)});
            }),
            ErrorCode::MalformedInput);
  EXPECT_EQ(code_of([] {
              History::from_operations({op("a", "p1", 0, OpKind::Read, "x", 0),
                                        op("b", "p1", 0, OpKind::Read, "y", 0)});
            }),
            ErrorCode::MalformedInput);
  EXPECT_EQ(code_of([] { History::from_operations({op("", "p1", 0, OpKind::Read, "x", 0)}); }),
            ErrorCode::MalformedInput);
}

TEST(History, ValidateDifferentiatedReportsIds) {
  const std::vector<Operation> ops = {op("a", "p1", 0, OpKind::Write, "x", 5),
                                      op("b", "p2", 0, OpKind::Write, "x", 5),
                                      op("c", "p2", 1, OpKind::Write, "y", 5)};
  const auto dup = validate_differentiated(ops);
  ASSERT_TRUE(dup.has_value());
  EXPECT_EQ(dup->variable, "x");
  EXPECT_EQ(dup->value, 5);
  EXPECT_EQ(dup->ids, (std::vector<std::string>{"a", "b"}));
}

TEST(History, UnexecutedReads) {
  const History h = History::from_operations(
      {op("a", "p1", 0, OpKind::Write, "x", 1), op("b", "p1", 1, OpKind::Read, "x", std::nullopt)});
  EXPECT_FALSE(h.is_executed());
  EXPECT_FALSE(h.wr_source(1).has_value());
}

TEST(History, PoMaximalOfSampleA) {
  const History h = testing::samples()[0].history;
  EXPECT_EQ(po_maximal(h), (std::vector<std::string>{"id2", "id6"}));
}

TEST(History, ProcessesSortByIndexNotInputOrder) {
  const History h = History::from_operations({op("late", "p1", 9, OpKind::Read, "x", 0),
                                              op("early", "p1", 2, OpKind::Write, "x", 4)});
  EXPECT_EQ(h.op(0).id, "early");
  EXPECT_EQ(h.po_predecessor(1), 0u);
  EXPECT_FALSE(h.po_predecessor(0).has_value());
}

TEST(History, JsonRoundTrip) {
  const History h = testing::samples()[4].history;
  const std::string text = serialize_history(h);
  EXPECT_EQ(parse_history(text), h);
  const std::string first = text.substr(0, text.find('\n'));
  EXPECT_EQ(first, R"({"id":"id0","process":"p1","index":0,"kind":"write","var":"x","value":1})");
}

TEST(History, ParseAcceptsNullValueAndBlankLines) {
  const History h = parse_history(
      "\n{\"id\":\"a\",\"process\":\"p\",\"index\":0,\"kind\":\"read\",\"var\":\"x\","
      "\"value\":null}\n\n");
  ASSERT_EQ(h.size(), 1u);
  EXPECT_FALSE(h.is_executed());
}

TEST(History, ParseErrorsCarryLineNumbers) {
  try {
    parse_history("{\"id\":\"a\",\"process\":\"p\",\"index\":0,\"kind\":\"read\",\"var\":\"x\"}\n{oops");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedInput);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_EQ(code_of([] { parse_history(R"({"id":"a","process":"p","index":0,"kind":"cas","var":"x"})"); }),
            ErrorCode::MalformedInput);
  EXPECT_EQ(code_of([] { parse_history(R"({"id":"a","index":0,"kind":"read","var":"x"})"); }),
            ErrorCode::MalformedInput);
}

TEST(History, WithReadValuesFillsReads) {
  const History h = History::from_operations(
      {op("a", "p1", 0, OpKind::Write, "x", 1), op("b", "p2", 0, OpKind::Read, "x", std::nullopt)});
  std::vector<std::optional<std::int64_t>> values(2);
  values[1] = 1;
  const History e = with_read_values(h, values);
  EXPECT_TRUE(e.is_executed());
  EXPECT_TRUE(e.wr().contains(0, 1));
}

}  // namespace
}  // namespace causalcheck

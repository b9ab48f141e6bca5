#include "hcsim/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hcsim;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("hcsim_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

private:
  fs::path path_;
};

void write(const fs::path& p, const std::string& s) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << s;
}

FrequencyTable parse(const std::string& s) {
  std::istringstream in(s);
  return io::table_from_csv(in);
}

}  // namespace

TEST(TableCsv, RoundTrip) {
  FrequencyTable t{{"the", 12}, {"of", 7}, {"a", 0}};
  const auto csv = io::table_to_csv(t);
  EXPECT_EQ(csv, "term,count\na,0\nof,7\nthe,12\n");
  EXPECT_EQ(parse(csv), t);
}

TEST(TableCsv, CrLfAndBlankLines) {
  EXPECT_EQ(parse("term,count\r\nx,3\r\n\r\ny,1\r\n"), (FrequencyTable{{"x", 3}, {"y", 1}}));
}

TEST(TableCsv, Malformed) {
  EXPECT_THROW(parse(""), io::FormatError);
  EXPECT_THROW(parse("word,n\nx,1\n"), io::FormatError);
  EXPECT_THROW(parse("term,count\nx\n"), io::FormatError);
  EXPECT_THROW(parse("term,count\nx,-1\n"), io::FormatError);
  EXPECT_THROW(parse("term,count\nx,1.5\n"), io::FormatError);
  EXPECT_THROW(parse("term,count\nx,\n"), io::FormatError);
  EXPECT_THROW(parse("term,count\n,4\n"), io::FormatError);
  EXPECT_THROW(parse("term,count\nx,1\nx,2\n"), io::FormatError);
  EXPECT_THROW(parse("term,count\na,b,2\n"), io::FormatError);
  EXPECT_THROW(parse("term,count\nx,99999999999999999999999\n"), io::FormatError);
}

TEST(TableCsv, ErrorNamesLine) {
  try {
    std::istringstream in("term,count\nok,1\nbad,zz\n");
    io::table_from_csv(in, "f.csv");
    FAIL();
  } catch (const io::FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("f.csv:3"), std::string::npos);
  }
}

TEST(PValueCsv, SortedByPi) {
  std::vector<PValueRecord> recs{{"b", 1, 2, 0.5, 0.9}, {"a", 5, 6, 0.5, 0.01}};
  EXPECT_EQ(io::pvalues_to_csv(recs), "term,x,n_w,p_w,pi\na,5,6,0.5,0.01\nb,1,2,0.5,0.9\n");
}

TEST(DeltaCsv, Rows) {
  DiscriminatingSet d;
  d.terms = {{"upon", 1e-8, 1}, {"whilst", 0.002, -1}};
  EXPECT_EQ(io::delta_to_csv(d), "term,pi,direction\nupon,1e-08,1\nwhilst,0.002,-1\n");
}

TEST(FormatDouble, Precision) {
  EXPECT_EQ(io::format_double(0.1), "0.1");
  EXPECT_EQ(io::format_double(1.0 / 3.0), "0.333333333333333");
  EXPECT_EQ(io::format_double(2.0), "2");
}

TEST(WriteAtomic, CreatesParentsAndLeavesNoTemp) {
  TempDir tmp;
  const auto p = tmp.path() / "a" / "b" / "out.csv";
  io::write_file_atomic(p, "hello\n");
  EXPECT_EQ(io::read_file(p), "hello\n");
  io::write_file_atomic(p, "again\n");
  EXPECT_EQ(io::read_file(p), "again\n");
  EXPECT_FALSE(fs::exists(tmp.path() / "a" / "b" / "out.csv.tmp"));
}

TEST(LoadTable, TextAndCsv) {
  TempDir tmp;
  write(tmp.path() / "d.txt", "The cat; the HAT.");
  write(tmp.path() / "t.csv", "term,count\nthe,2\n");
  EXPECT_EQ(io::load_table(tmp.path() / "d.txt", {}), (FrequencyTable{{"the", 2}, {"cat", 1}, {"hat", 1}}));
  EXPECT_EQ(io::load_table(tmp.path() / "t.csv", {}), (FrequencyTable{{"the", 2}}));
  EXPECT_THROW(io::load_table(tmp.path() / "missing.txt", {}), std::runtime_error);
}

TEST(LoadCorpora, LayoutAndOrder) {
  TempDir tmp;
  write(tmp.path() / "madison" / "m2.txt", "b b");
  write(tmp.path() / "madison" / "m1.txt", "a");
  write(tmp.path() / "hamilton" / "h1.txt", "upon upon");
  write(tmp.path() / "hamilton" / "notes.md", "ignored");
  write(tmp.path() / "empty" / "readme", "no documents here");
  write(tmp.path() / "disputed" / "d1.txt", "x");
  auto corpora = io::load_corpora(tmp.path(), {}, {"disputed"});
  ASSERT_EQ(corpora.size(), 2u);
  EXPECT_EQ(corpora[0].author(), "hamilton");
  EXPECT_EQ(corpora[0].size(), 1u);
  EXPECT_EQ(corpora[1].author(), "madison");
  ASSERT_EQ(corpora[1].size(), 2u);
  EXPECT_EQ(corpora[1].documents()[0].id, "madison/m1");
  EXPECT_EQ(corpora[1].documents()[1].id, "madison/m2");
  EXPECT_EQ(corpora[1].concatenated(), (FrequencyTable{{"a", 1}, {"b", 2}}));
}

TEST(LoadCorpora, Errors) {
  TempDir tmp;
  EXPECT_THROW(io::load_corpora(tmp.path() / "nope", {}), std::runtime_error);
  EXPECT_THROW(io::load_corpora(tmp.path(), {}), std::runtime_error);
  write(tmp.path() / "x" / "d.txt", "a");
  write(tmp.path() / "x" / "d.csv", "term,count\na,1\n");
  EXPECT_THROW(io::load_corpora(tmp.path(), {}), std::runtime_error);
}

TEST(LoadDocuments, FileOrDirectory) {
  TempDir tmp;
  write(tmp.path() / "disputed" / "fed49.txt", "a b");
  write(tmp.path() / "disputed" / "fed50.txt", "c");
  auto one = io::load_documents(tmp.path() / "disputed" / "fed49.txt", {});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].id, "disputed/fed49");
  EXPECT_EQ(io::load_documents(tmp.path() / "disputed", {}).size(), 2u);
  EXPECT_EQ(io::load_documents(tmp.path() / "disputed/", {})[0].id, "disputed/fed49");
}

TEST(TableText, ReTokenizesToSameTable) {
  FrequencyTable t{{"alpha", 20}, {"beta", 3}};
  const auto text = io::table_to_text(t);
  EXPECT_EQ(count_terms(tokenize_terms(text)), t);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}

TEST(DocStem, Split) {
  EXPECT_EQ(io::doc_stem("A/doc001"), "doc001");
  EXPECT_EQ(io::doc_stem("plain"), "plain");
}

#pragma once

#include "hcsim/attribution.hpp"
#include "hcsim/binom_test.hpp"
#include "hcsim/frequency_table.hpp"
#include "hcsim/hc.hpp"
#include "hcsim/text_ingest.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcsim::io {

namespace fs = std::filesystem;

/// Malformed input file.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes through a temporary sibling and renames, so a failed run never
/// leaves a truncated file behind.
inline void write_file_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

// ---- frequency tables -------------------------------------------------------

/// `term,count` header, one row per term, sorted by term.
inline std::string table_to_csv(const FrequencyTable& table) {
  std::string out = "term,count\n";
  for (const auto& [term, c] : table) {
    out += term;
    out += ',';
    out += std::to_string(c);
    out += '\n';
  }
  return out;
}

inline FrequencyTable table_from_csv(std::istream& in, const std::string& source = "<stream>") {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(source + ": empty file, expected header 'term,count'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "term,count") throw FormatError(source + ": expected header 'term,count', got '" + line + "'");
  FrequencyTable table;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.rfind(',');
    const std::string where = source + ":" + std::to_string(lineno);
    if (comma == std::string::npos || comma == 0) throw FormatError(where + ": expected 'term,count'");
    const std::string term = line.substr(0, comma);
    const std::string num = line.substr(comma + 1);
    if (term.find(',') != std::string::npos) throw FormatError(where + ": term contains a comma");
    if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw FormatError(where + ": count '" + num + "' is not a nonnegative integer");
    }
    if (table.contains(term)) throw FormatError(where + ": duplicate term '" + term + "'");
    Count c;
    try {
      c = std::stoll(num);
    } catch (const std::out_of_range&) {
      throw FormatError(where + ": count out of range");
    }
    table.add(term, c);
  }
  return table;
}

inline FrequencyTable load_table_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return table_from_csv(in, path.string());
}

/// A `.csv` path is read as a frequency table, anything else as raw text.
inline FrequencyTable load_table(const fs::path& path, const TokenizerConfig& cfg) {
  if (path.extension() == ".csv") return load_table_csv(path);
  return count_terms(tokenize_terms(read_file(path), cfg));
}

// ---- P-values and discriminating sets --------------------------------------

/// `term,x,n_w,p_w,pi`, ascending by pi.
inline std::string pvalues_to_csv(const std::vector<PValueRecord>& records) {
  std::string out = "term,x,n_w,p_w,pi\n";
  for (const auto& r : sorted_by_pvalue(records)) {
    out += r.term + ',' + std::to_string(r.x) + ',' + std::to_string(r.n_w) + ',' + format_double(r.p_w) + ',' +
           format_double(r.pi) + '\n';
  }
  return out;
}

/// `term,pi,direction` with direction +1 / -1 / 0.
inline std::string delta_to_csv(const DiscriminatingSet& delta) {
  std::string out = "term,pi,direction\n";
  for (const auto& d : delta.terms) out += d.term + ',' + format_double(d.pi) + ',' + std::to_string(d.direction) + '\n';
  return out;
}

// ---- corpus directories -----------------------------------------------------

inline bool is_document_file(const fs::path& p) {
  return fs::is_regular_file(p) && (p.extension() == ".txt" || p.extension() == ".csv");
}

/// Documents in `dir` (sorted by file name), with ids "<dir-name>/<stem>".
inline std::vector<Document> load_documents_dir(const fs::path& dir, const TokenizerConfig& cfg) {
  if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: '" + dir.string() + "'");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (is_document_file(e.path())) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Document> docs;
  const std::string prefix = fs::absolute(dir).lexically_normal().filename().string();
  const std::string dir_name = prefix.empty() ? fs::absolute(dir).lexically_normal().parent_path().filename().string() : prefix;
  for (const auto& f : files) {
    const std::string id = dir_name + "/" + f.stem().string();
    for (const auto& d : docs) {
      if (d.id == id) throw std::runtime_error("duplicate document id '" + id + "' (both .txt and .csv?)");
    }
    docs.push_back({id, load_table(f, cfg)});
  }
  return docs;
}

/// A single document file or a directory of them.
inline std::vector<Document> load_documents(const fs::path& path, const TokenizerConfig& cfg) {
  if (fs::is_directory(path)) return load_documents_dir(path, cfg);
  if (!fs::is_regular_file(path)) throw std::runtime_error("no such file or directory: '" + path.string() + "'");
  const std::string dir_name = fs::absolute(path).lexically_normal().parent_path().filename().string();
  return {{dir_name + "/" + path.stem().string(), load_table(path, cfg)}};
}

/// `root/<author-id>/<doc-id>.txt` (or `.csv`), one corpus per author,
/// sorted by author id. Authors listed in `exclude` are skipped.
inline std::vector<Corpus> load_corpora(const fs::path& root, const TokenizerConfig& cfg,
                                        const std::vector<std::string>& exclude = {}) {
  if (!fs::is_directory(root)) throw std::runtime_error("corpus directory not found: '" + root.string() + "'");
  std::vector<fs::path> authors;
  for (const auto& e : fs::directory_iterator(root)) {
    if (!e.is_directory()) continue;
    const auto name = e.path().filename().string();
    if (std::find(exclude.begin(), exclude.end(), name) != exclude.end()) continue;
    authors.push_back(e.path());
  }
  std::sort(authors.begin(), authors.end());
  std::vector<Corpus> out;
  for (const auto& a : authors) {
    auto docs = load_documents_dir(a, cfg);
    if (docs.empty()) continue;
    out.emplace_back(a.filename().string(), std::move(docs));
  }
  if (out.empty()) throw std::runtime_error("no author directories with documents under '" + root.string() + "'");
  return out;
}

/// Bag-of-words text for a table: terms in table order, 16 per line.
inline std::string table_to_text(const FrequencyTable& table) {
  std::string out;
  std::size_t on_line = 0;
  for (const auto& [term, c] : table) {
    for (Count i = 0; i < c; ++i) {
      if (on_line) out += ' ';
      out += term;
      if (++on_line == 16) {
        out += '\n';
        on_line = 0;
      }
    }
  }
  if (on_line) out += '\n';
  return out;
}

/// Local part of a document id ("author/doc" -> "doc").
inline std::string doc_stem(const std::string& id) {
  const auto slash = id.rfind('/');
  return slash == std::string::npos ? id : id.substr(slash + 1);
}

}  // namespace hcsim::io

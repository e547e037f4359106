#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cliff {

enum class Verdict { Pass, Fail, Info };
enum class Mode { Exact, Exhaustive, Sampled };

const char* to_string(Verdict v);
const char* to_string(Mode m);

// One verified statement.  `fields` keeps insertion order so text output is
// stable for diffing.
struct Record {
  std::string id;
  std::string claim;
  Verdict verdict = Verdict::Info;
  Mode mode = Mode::Exact;
  uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> fields;

  Record& set(const std::string& key, const std::string& value);
  Record& set(const std::string& key, long long value);
  Record& pass_if(bool ok) {
    verdict = ok ? Verdict::Pass : Verdict::Fail;
    return *this;
  }
};

class Report {
 public:
  Record& add(Record r) {
    records_.push_back(std::move(r));
    return records_.back();
  }
  void append(const Report& other) {
    records_.insert(records_.end(), other.records_.begin(), other.records_.end());
  }
  const std::vector<Record>& records() const { return records_; }
  bool all_passed() const;

  std::string to_text() const;
  std::string to_json() const;

 private:
  std::vector<Record> records_;
};

}  // namespace cliff

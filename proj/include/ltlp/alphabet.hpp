// ltlp/alphabet.hpp — proposition sets with declaration order.

#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ltlp {

inline bool valid_proposition_name(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// Ordered set of proposition names.  Iteration order is declaration order,
// which fixes the bit layout of letters and the letter enumeration order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names) {
    for (auto& n : names) add(n);
  }

  bool add(const std::string& name) {
    if (!valid_proposition_name(name))
      throw std::invalid_argument("invalid proposition name: '" + name + "'");
    if (index_.count(name)) return false;
    if (names_.size() >= 30)
      throw std::invalid_argument("alphabet too large (at most 30 propositions)");
    index_.emplace(name, names_.size());
    names_.push_back(name);
    return true;
  }

  bool contains(const std::string& name) const { return index_.count(name) != 0; }

  std::size_t index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
      throw std::out_of_range("unknown proposition: '" + name + "'");
    return it->second;
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::size_t letter_count() const { return std::size_t{1} << names_.size(); }

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }
  bool operator!=(const Alphabet& other) const { return !(*this == other); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace ltlp

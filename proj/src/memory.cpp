#include "teso/memory.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace teso {

std::size_t CandidateKeyHash::operator()(const CandidateKey& key) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (const std::int64_t idx : key.bin_indices) {
    h ^= static_cast<std::size_t>(idx) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

CandidateKey represent(const Candidate& x, const DecisionSpace& space, double bin_width) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("represent: bin_width must be > 0");
  CandidateKey key;
  key.bin_indices.reserve(x.x.size());
  for (const double xi : x.x) {
    key.bin_indices.push_back(static_cast<std::int64_t>(std::floor((xi - space.lower) / bin_width)));
  }
  return key;
}

TabuList::TabuList(int capacity) : capacity_(capacity) {
  if (capacity < 0) throw std::invalid_argument("TabuList: capacity must be >= 0");
}

void TabuList::insert(const CandidateKey& key) {
  if (capacity_ == 0) return;
  if (auto it = index_.find(key); it != index_.end()) {
    // Refresh age: move to the back of the eviction order.
    order_.splice(order_.end(), order_, it->second);
    return;
  }
  order_.push_back(key);
  index_.emplace(key, std::prev(order_.end()));
  if (static_cast<int>(order_.size()) > capacity_) {
    index_.erase(order_.front());
    order_.pop_front();
  }
}

bool TabuList::contains(const CandidateKey& key) const {
  return capacity_ != 0 && index_.contains(key);
}

EliteMemory::EliteMemory(int capacity, Direction direction)
    : capacity_(capacity), direction_(direction) {
  if (capacity < 1) throw std::invalid_argument("EliteMemory: capacity must be >= 1");
  entries_.reserve(static_cast<std::size_t>(capacity));
}

bool EliteMemory::better(double a, double b) const {
  return direction_ == Direction::Minimize ? a < b : a > b;
}

void EliteMemory::insert(Candidate x, double mean) {
  const std::uint64_t age = next_age_++;
  if (static_cast<int>(entries_.size()) < capacity_) {
    entries_.push_back(Entry{std::move(x), mean, age});
    return;
  }
  // Oldest among the worst entries is the eviction victim.
  std::size_t worst = 0;
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (better(entries_[worst].mean, entries_[i].mean) ||
        (entries_[i].mean == entries_[worst].mean && entries_[i].age < entries_[worst].age)) {
      worst = i;
    }
  }
  // Reject only a newcomer strictly worse than everything stored; on a tie
  // with the worst, recency wins.
  if (better(entries_[worst].mean, mean)) return;
  entries_[worst] = Entry{std::move(x), mean, age};
}

std::optional<Candidate> EliteMemory::select(RngStream& stream) const {
  if (entries_.empty()) return std::nullopt;
  const std::uint64_t i = stream.uniform_index(entries_.size());
  return entries_[i].candidate;
}

}  // namespace teso

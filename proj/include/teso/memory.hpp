#pragma once

#include <cstdint>
#include <list>
#include <optional>
#include <unordered_map>
#include <vector>

#include "teso/objective.hpp"

namespace teso {

// Discretized, hashable representation of a candidate: per-coordinate bin
// index. Candidates in the same bin share a key.
struct CandidateKey {
  std::vector<std::int64_t> bin_indices;

  friend bool operator==(const CandidateKey&, const CandidateKey&) = default;
};

struct CandidateKeyHash {
  std::size_t operator()(const CandidateKey& key) const noexcept;
};

// key_i = floor((x_i - lower) / bin_width). Pure function of its arguments.
CandidateKey represent(const Candidate& x, const DecisionSpace& space, double bin_width);

// Short-term memory of recently visited bins. FIFO eviction once capacity is
// exceeded; re-inserting a present key refreshes its age (tenure == capacity).
// Capacity 0 disables the list: contains() is always false, insert() a no-op.
class TabuList {
 public:
  explicit TabuList(int capacity);

  void insert(const CandidateKey& key);
  [[nodiscard]] bool contains(const CandidateKey& key) const;

  [[nodiscard]] int size() const { return static_cast<int>(index_.size()); }
  [[nodiscard]] int capacity() const { return capacity_; }

 private:
  int capacity_;
  std::list<CandidateKey> order_;  // front = oldest
  std::unordered_map<CandidateKey, std::list<CandidateKey>::iterator, CandidateKeyHash> index_;
};

// Long-term archive of the best candidate/mean pairs seen so far.
// Holds the capacity best means ever inserted (direction-aware); on ties the
// newer entry wins.
class EliteMemory {
 public:
  struct Entry {
    Candidate candidate;
    double mean;
    std::uint64_t age;  // insertion sequence number
  };

  EliteMemory(int capacity, Direction direction);

  void insert(Candidate x, double mean);

  // One stored candidate chosen uniformly at random; nullopt when empty
  // (caller falls back to a random candidate).
  [[nodiscard]] std::optional<Candidate> select(RngStream& stream) const;

  [[nodiscard]] int size() const { return static_cast<int>(entries_.size()); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] int capacity() const { return capacity_; }
  [[nodiscard]] Direction direction() const { return direction_; }
  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }

 private:
  // Strictly better in the configured direction.
  [[nodiscard]] bool better(double a, double b) const;

  int capacity_;
  Direction direction_;
  std::uint64_t next_age_ = 0;
  std::vector<Entry> entries_;
};

}  // namespace teso

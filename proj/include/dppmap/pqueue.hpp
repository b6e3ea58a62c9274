#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace dppmap {

// Max-priority queue over indices in [0, universe) keyed by stale upper
// bounds. Ordering is (key descending, index ascending), a total order, so
// every algorithm built on it breaks ties toward the smaller index.
//
// Updating a key is a push: it bumps the index's version and any older heap
// entry for that index becomes dead, to be discarded when it surfaces.
// exclude() kills an index for good in this queue.
class LazyMaxQueue {
 public:
  struct Entry {
    double key;
    std::size_t index;
  };

  explicit LazyMaxQueue(std::size_t universe = 0);

  // One live entry per index, keys[i] for index i. O(n) heapify.
  static LazyMaxQueue build(std::span<const double> keys);

  // Replaces the contents with the given (index, key) pairs; O(len) heapify.
  // Exclusions are kept.
  void rebuild(std::span<const std::size_t> indices, std::span<const double> keys);

  void push(std::size_t index, double key);
  // Throws EmptyQueueError when nothing is live.
  Entry pop_max();
  // Live maximum, if any.
  std::optional<Entry> top();
  // Live maximum key, -inf when empty.
  double peek_max();
  void exclude(std::size_t index);

  bool excluded(std::size_t index) const { return excluded_[index] != 0; }
  bool empty() { return !top().has_value(); }
  std::size_t universe() const { return version_.size(); }

  // push + pop calls so far.
  std::uint64_t ops() const { return ops_; }
  // Dead entries thrown away while looking for the live maximum.
  std::uint64_t discarded() const { return discarded_; }

 private:
  struct HeapEntry {
    double key;
    std::size_t index;
    std::uint64_t version;
  };
  // "a sits below b in the heap".
  static bool lower(const HeapEntry& a, const HeapEntry& b) {
    if (a.key != b.key) return a.key < b.key;
    return a.index > b.index;
  }
  bool live(const HeapEntry& e) const {
    return !excluded_[e.index] && version_[e.index] == e.version;
  }
  void drop_dead_top();

  std::vector<HeapEntry> heap_;
  std::vector<std::uint64_t> version_;
  std::vector<char> excluded_;
  std::uint64_t ops_ = 0;
  std::uint64_t discarded_ = 0;
};

// True when a freshly computed (key, index) still ranks at or above the best
// live entry under the queue's total order. The lazy loops commit on this.
inline bool beats(double key, std::size_t index, const std::optional<LazyMaxQueue::Entry>& best) {
  if (!best) return true;
  if (key != best->key) return key > best->key;
  return index < best->index;
}

}  // namespace dppmap

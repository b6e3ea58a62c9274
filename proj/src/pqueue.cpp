#include "dppmap/pqueue.hpp"

#include <algorithm>
#include <stdexcept>

#include "dppmap/errors.hpp"

namespace dppmap {

LazyMaxQueue::LazyMaxQueue(std::size_t universe)
    : version_(universe, 0), excluded_(universe, 0) {}

LazyMaxQueue LazyMaxQueue::build(std::span<const double> keys) {
  LazyMaxQueue q(keys.size());
  q.heap_.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    q.version_[i] = 1;
    q.heap_.push_back({keys[i], i, 1});
  }
  std::make_heap(q.heap_.begin(), q.heap_.end(), lower);
  return q;
}

void LazyMaxQueue::rebuild(std::span<const std::size_t> indices, std::span<const double> keys) {
  if (indices.size() != keys.size()) throw std::invalid_argument("rebuild: size mismatch");
  heap_.clear();
  for (std::size_t t = 0; t < indices.size(); ++t) {
    const std::size_t i = indices[t];
    if (i >= version_.size()) throw std::out_of_range("rebuild: index outside universe");
    if (excluded_[i]) continue;
    heap_.push_back({keys[t], i, ++version_[i]});
  }
  std::make_heap(heap_.begin(), heap_.end(), lower);
}

void LazyMaxQueue::push(std::size_t index, double key) {
  if (index >= version_.size()) throw std::out_of_range("push: index outside universe");
  if (excluded_[index]) throw ContractViolation("push of an excluded index");
  ++ops_;
  heap_.push_back({key, index, ++version_[index]});
  std::push_heap(heap_.begin(), heap_.end(), lower);
}

void LazyMaxQueue::drop_dead_top() {
  while (!heap_.empty() && !live(heap_.front())) {
    std::pop_heap(heap_.begin(), heap_.end(), lower);
    heap_.pop_back();
    ++discarded_;
  }
}

LazyMaxQueue::Entry LazyMaxQueue::pop_max() {
  drop_dead_top();
  if (heap_.empty()) throw EmptyQueueError();
  ++ops_;
  std::pop_heap(heap_.begin(), heap_.end(), lower);
  const HeapEntry e = heap_.back();
  heap_.pop_back();
  // The popped entry was the only live one for this index.
  ++version_[e.index];
  return {e.key, e.index};
}

std::optional<LazyMaxQueue::Entry> LazyMaxQueue::top() {
  drop_dead_top();
  if (heap_.empty()) return std::nullopt;
  return Entry{heap_.front().key, heap_.front().index};
}

double LazyMaxQueue::peek_max() {
  const auto t = top();
  return t ? t->key : -std::numeric_limits<double>::infinity();
}

void LazyMaxQueue::exclude(std::size_t index) {
  if (index >= version_.size()) throw std::out_of_range("exclude: index outside universe");
  excluded_[index] = 1;
}

}  // namespace dppmap

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aqp/dataset.hpp"
#include "aqp/error.hpp"
#include "aqp/feature_matrix.hpp"
#include "aqp/signal.hpp"

namespace aqp {

class ResultStore;

/// Value-semantic handle to a nested ResultStore. Copying copies the
/// whole nested store, so Value copies are always deep.
class StoreBox {
 public:
  StoreBox();
  explicit StoreBox(ResultStore store);
  StoreBox(const StoreBox& other);
  StoreBox& operator=(const StoreBox& other);
  StoreBox(StoreBox&&) noexcept = default;
  StoreBox& operator=(StoreBox&&) noexcept = default;
  ~StoreBox();

  ResultStore& operator*() { return *store_; }
  const ResultStore& operator*() const { return *store_; }
  ResultStore* operator->() { return store_.get(); }
  const ResultStore* operator->() const { return store_.get(); }

  bool operator==(const StoreBox& other) const;

 private:
  std::unique_ptr<ResultStore> store_;
};

/// Everything a node may read or write.
using Value = std::variant<double, std::string, std::vector<std::int64_t>,
                           Signal, FeatureMatrix, DatasetTable, StoreBox>;

std::string_view value_type_name(const Value& v);

/// Shared key/value dictionary threaded through a pipeline run. Nodes
/// communicate exclusively through it. Keys are unordered conceptually;
/// iteration order is sorted so downstream output is deterministic.
class ResultStore {
 public:
  bool contains(std::string_view key) const;
  std::size_t size() const { return entries_.size(); }

  /// Inserts or replaces.
  void set(std::string key, Value value);

  /// Throws Error(missing_key) when absent.
  const Value& get_value(std::string_view key) const;
  Value& get_value(std::string_view key);

  /// Typed read; throws Error(type_mismatch) when the key holds a
  /// different alternative.
  template <typename T>
  const T& get(std::string_view key) const {
    const Value& v = get_value(key);
    const T* p = std::get_if<T>(&v);
    if (p == nullptr)
      throw Error(errc::type_mismatch,
                  "key '" + std::string(key) + "' holds " +
                      std::string(value_type_name(v)));
    return *p;
  }

  template <typename T>
  T& get(std::string_view key) {
    return const_cast<T&>(static_cast<const ResultStore*>(this)->get<T>(key));
  }

  void erase(std::string_view key);

  /// Sorted keys.
  std::vector<std::string> keys() const;

  bool operator==(const ResultStore&) const = default;

 private:
  std::map<std::string, Value, std::less<>> entries_;
};

}  // namespace aqp

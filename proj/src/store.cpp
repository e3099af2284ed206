#include "aqp/store.hpp"

namespace aqp {

StoreBox::StoreBox() : store_(std::make_unique<ResultStore>()) {}

StoreBox::StoreBox(ResultStore store)
    : store_(std::make_unique<ResultStore>(std::move(store))) {}

StoreBox::StoreBox(const StoreBox& other)
    : store_(std::make_unique<ResultStore>(*other.store_)) {}

StoreBox& StoreBox::operator=(const StoreBox& other) {
  if (this != &other) store_ = std::make_unique<ResultStore>(*other.store_);
  return *this;
}

StoreBox::~StoreBox() = default;

bool StoreBox::operator==(const StoreBox& other) const {
  return *store_ == *other.store_;
}

std::string_view value_type_name(const Value& v) {
  switch (v.index()) {
    case 0: return "number";
    case 1: return "string";
    case 2: return "int_list";
    case 3: return "signal";
    case 4: return "feature_matrix";
    case 5: return "dataset";
    case 6: return "store";
  }
  return "unknown";
}

bool ResultStore::contains(std::string_view key) const {
  return entries_.find(key) != entries_.end();
}

void ResultStore::set(std::string key, Value value) {
  entries_.insert_or_assign(std::move(key), std::move(value));
}

const Value& ResultStore::get_value(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end())
    throw Error(errc::missing_key, "key '" + std::string(key) + "' not in store");
  return it->second;
}

Value& ResultStore::get_value(std::string_view key) {
  auto it = entries_.find(key);
  if (it == entries_.end())
    throw Error(errc::missing_key, "key '" + std::string(key) + "' not in store");
  return it->second;
}

void ResultStore::erase(std::string_view key) {
  auto it = entries_.find(key);
  if (it != entries_.end()) entries_.erase(it);
}

std::vector<std::string> ResultStore::keys() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

}  // namespace aqp

#include "mxplex/order.hpp"

#include "mxplex/numerics.hpp"

#include <algorithm>

namespace mxplex {

std::size_t ModelOrder::common_present(std::size_t l) const {
  const std::size_t total = per_layer.at(l);
  const std::size_t priv = private_counts.at(l);
  return std::min(common, total > priv ? total - priv : 0);
}

ModelOrder ModelOrder::all_common(std::size_t common, std::vector<std::size_t> private_counts) {
  ModelOrder order;
  order.common = common;
  order.private_counts = std::move(private_counts);
  for (std::size_t kp : order.private_counts) order.per_layer.push_back(common + kp);
  return order;
}

void ModelOrder::validate(std::size_t layers) const {
  if (private_counts.size() != layers || per_layer.size() != layers) {
    throw DimensionError("ModelOrder: expected counts for " + std::to_string(layers) +
                         " layers, got k_p=" + std::to_string(private_counts.size()) +
                         " k_l=" + std::to_string(per_layer.size()));
  }
  bool any = common > 0;
  for (std::size_t l = 0; l < layers; ++l) {
    any = any || private_counts[l] > 0;
    if (per_layer[l] < private_counts[l]) {
      throw DimensionError("ModelOrder: layer " + std::to_string(l) +
                           " has more private communities than communities");
    }
    if (common + private_counts[l] == 0) {
      throw DimensionError("ModelOrder: layer " + std::to_string(l) + " has no communities");
    }
  }
  if (!any) throw DimensionError("ModelOrder: all community counts are zero");
}

std::string ModelOrder::record() const {
  auto list = [](const std::vector<std::size_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
  };
  return "k_l=" + list(per_layer) + " k_c=" + std::to_string(common) +
         " k_p=" + list(private_counts) + " cut=" + std::to_string(cut);
}

}  // namespace mxplex

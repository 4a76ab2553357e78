#include "layrel/layout_ops.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "layrel/checked.hpp"
#include "layrel/error.hpp"

namespace layrel {

namespace {

CuteLayout trivial_layout() { return CuteLayout(IntTuple(1), IntTuple(0)); }

CuteLayout promote(const CuteLayout &g, std::int64_t needed) {
  const std::int64_t have = size(g);
  if (have >= needed)
    return g;
  auto shape = g.shape().leaves();
  shape.back() = checked_mul(shape.back(), ceil_div(needed, have));
  return CuteLayout(unflatten(shape, g.shape()), g.strides());
}

CuteLayout compose_leaf(const CuteLayout &g, const CuteLayout &f) {
  const Relation l = compose(layout_mapping(f), layout_mapping(g));
  const Relation i = compose(colex_linearization(f.shape()), l);
  if (affine_fit(i))
    return layout_from_affine(i, f.shape());

  const auto flat_g = g.shape().leaves();
  const auto extents =
      extract_shape(range(compose(layout_mapping(f), coord_mapping(flat_tuple(flat_g)))));
  std::vector<std::int64_t> shape;
  for (const auto &[k, t] : extents)
    if (k > 1)
      shape.push_back(k);
  if (shape.empty())
    shape.push_back(1);
  const IntTuple new_shape = flat_tuple(shape);
  if (product(new_shape) != size(f))
    throw Error(ErrorKind::InvalidComposition,
                "image of " + to_string(f) + " in " + to_string(g) +
                    " has " + std::to_string(product(new_shape)) +
                    " points, expected " + std::to_string(size(f)));
  try {
    return layout_from_affine(compose(colex_linearization(new_shape), l),
                              new_shape);
  } catch (const Error &e) {
    throw Error(ErrorKind::InvalidComposition,
                to_string(g) + " o " + to_string(f) + ": " + e.what());
  }
}

CuteLayout compose_modes(const CuteLayout &g, const CuteLayout &f) {
  if (f.rank() == 1) {
    const CuteLayout m = f.mode(0);
    if (m.shape().is_leaf())
      return compose_leaf(g, m);
    return compose_modes(g, m);
  }
  std::vector<IntTuple> shape, strides;
  for (std::size_t i = 0; i < f.rank(); ++i) {
    const CuteLayout part = compose_modes(g, f.mode(i));
    shape.push_back(part.shape());
    strides.push_back(part.strides());
  }
  return CuteLayout(IntTuple(std::move(shape)), IntTuple(std::move(strides)));
}

/// Indices i in [0, n) with h(r(i)) == i.
bool is_right_inverse(const Relation &h_map, const CuteLayout &r) {
  const Relation back = compose(layout_mapping(r), h_map);
  if (back.size() != static_cast<std::size_t>(size(r)))
    return false;
  for (const auto &[in, out] : back.pairs())
    if (in != out)
      return false;
  return true;
}

} // namespace

CuteLayout compose(const CuteLayout &g, const CuteLayout &f) {
  const CuteLayout promoted = promote(g, cosize(f));
  CuteLayout result = compose_modes(promoted, f);
  // Mode-by-mode results are only meaningful when g distributes over the
  // modes of f; check the assembled layout against the composed mappings.
  if (!(layout_mapping(result) ==
        compose(layout_mapping(f), layout_mapping(promoted))))
    throw Error(ErrorKind::InvalidComposition,
                to_string(g) + " does not distribute over the modes of " +
                    to_string(f));
  return result;
}

std::vector<std::pair<std::int64_t, std::int64_t>>
extract_shape(const BoundedSet &r) {
  if (r.empty())
    throw Error(ErrorKind::InvalidComposition, "image set is empty");
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  std::int64_t volume = 1;
  for (std::size_t d = 0; d < r.arity(); ++d) {
    std::vector<std::int64_t> vals;
    for (const auto &p : r)
      vals.push_back(p[d]);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    if (vals.front() != 0)
      throw Error(ErrorKind::InvalidComposition,
                  "dimension " + std::to_string(d) + " does not start at 0");
    const std::int64_t t = vals.size() > 1 ? vals[1] : 1;
    for (std::size_t k = 0; k < vals.size(); ++k)
      if (vals[k] != checked_mul(static_cast<std::int64_t>(k), t))
        throw Error(ErrorKind::InvalidComposition,
                    "dimension " + std::to_string(d) +
                        " has no constant stride");
    const auto extent = static_cast<std::int64_t>(vals.size());
    out.emplace_back(extent, t);
    volume = checked_mul(volume, extent);
  }
  if (volume != static_cast<std::int64_t>(r.size()))
    throw Error(ErrorKind::InvalidComposition,
                "image set is not a product of its dimensions");
  return out;
}

CuteLayout complement(const CuteLayout &h, std::int64_t target) {
  if (target < 1)
    throw Error(ErrorKind::InvalidShape,
                "complement target must be positive, got " +
                    std::to_string(target));
  const Relation h_map = layout_mapping(h);
  if (!is_injective(h_map))
    throw Error(ErrorKind::ComplementUndefined,
                to_string(h) + " is not injective");
  const BoundedSet h_range = range(h_map);
  const std::int64_t max_index = std::max(target - 1, cosize(h) - 1);

  CuteLayout current = h;
  std::vector<std::int64_t> shapes, strides;
  std::int64_t filled = 0;
  while (true) {
    const BoundedSet gaps = subtract(interval_set(filled, max_index + 1),
                                     range(layout_mapping(current)));
    if (gaps.empty())
      break;
    std::int64_t begin = lexmin(gaps)[0];
    std::int64_t end = 0;
    std::int64_t extent = 0;
    const BoundedSet above = subtract(h_range, interval_set(0, begin));
    if (begin < cosize(current) && !above.empty()) {
      end = lexmin(above)[0];
      extent = floor_div(end, begin);
    } else {
      begin = cosize(current);
      end = max_index + 1;
      extent = ceil_div(end, begin);
    }
    if (extent > 1) {
      const CuteLayout factor{IntTuple(extent), IntTuple(begin)};
      current = concat(current, factor);
      shapes.push_back(extent);
      strides.push_back(begin);
    }
    filled = end;
  }
  if (shapes.empty())
    return trivial_layout();
  // Gap filling assumes the image of h is a product of progressions; when
  // it is not, the factors overlap the image.
  if (!is_injective(layout_mapping(current)))
    throw Error(ErrorKind::ComplementUndefined,
                "gaps in the image of " + to_string(h) +
                    " cannot be filled by strided factors");
  return CuteLayout(flat_tuple(shapes), flat_tuple(strides));
}

CuteLayout inverse(const CuteLayout &h) {
  const CuteLayout flat = flatten(h);
  const Relation h_map = layout_mapping(flat);
  if (!is_injective(h_map) || size(flat) != cosize(flat))
    throw Error(ErrorKind::NotInvertible,
                to_string(h) + " is not a bijection onto [0, size)");
  const auto s = flat.shape().leaves();
  const auto d = flat.strides().leaves();
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  std::vector<std::int64_t> shape_inv;
  for (auto k : order)
    shape_inv.push_back(s[k]);
  const IntTuple inv_shape = flat_tuple(shape_inv);
  try {
    return layout_from_affine(
        compose(colex_linearization(inv_shape), inverse(h_map)), inv_shape);
  } catch (const Error &e) {
    throw Error(ErrorKind::NotInvertible,
                to_string(h) + ": " + e.what());
  }
}

CuteLayout right_inverse(const CuteLayout &h) {
  const CuteLayout flat = flatten(h);
  const Relation h_map = layout_mapping(flat);
  const std::int64_t co = cosize(flat);
  const BoundedSet gaps = subtract(interval_set(0, co), range(h_map));
  const std::int64_t begin = gaps.empty() ? co : lexmin(gaps)[0];
  if (begin <= 1)
    return trivial_layout();

  const Relation prefix = intersect_range(h_map, interval_set(0, begin));
  if (!is_injective(prefix))
    return trivial_layout();
  const Relation coords =
      intersect_domain(coord_mapping(flat.shape()), domain(prefix));

  std::vector<std::pair<std::int64_t, std::int64_t>> extents;
  try {
    extents = extract_shape(range(coords));
  } catch (const Error &) {
    return trivial_layout();
  }
  // K walks the covered natural coordinates with unit steps; its stride
  // along dimension i is the layout stride times the progression step.
  const auto d = flat.strides().leaves();
  std::vector<std::int64_t> k_shape, k_strides;
  for (std::size_t i = 0; i < extents.size(); ++i) {
    if (extents[i].first == 1)
      continue;
    k_shape.push_back(extents[i].first);
    k_strides.push_back(checked_mul(d[i], extents[i].second));
  }
  if (k_shape.empty())
    return trivial_layout();
  const CuteLayout k(flat_tuple(k_shape), flat_tuple(k_strides));

  std::optional<CuteLayout> candidate;
  try {
    candidate = inverse(k);
  } catch (const Error &) {
  }
  if (candidate && is_right_inverse(h_map, *candidate))
    return *candidate;

  // K's integral coordinates need not line up with those of h (dropped or
  // strided dimensions); keep the shape and refit the strides against h.
  const IntTuple shape =
      candidate ? flat_tuple(candidate->shape().leaves()) : flat_tuple(k_shape);
  try {
    const CuteLayout refit = layout_from_affine(
        compose(colex_linearization(shape), inverse(prefix)), shape);
    if (is_right_inverse(h_map, refit))
      return refit;
  } catch (const Error &) {
  }
  return trivial_layout();
}

CuteLayout left_inverse(const CuteLayout &h) {
  return right_inverse(concat(h, complement(h, cosize(h))));
}

} // namespace layrel

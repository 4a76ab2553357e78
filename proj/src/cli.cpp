#include "layrel/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "layrel/cute_layout.hpp"
#include "layrel/error.hpp"
#include "layrel/layout_ops.hpp"
#include "layrel/linear_layout.hpp"
#include "layrel/relation_text.hpp"
#include "layrel/swizzle.hpp"

namespace layrel {

namespace {

using ordered_json = nlohmann::ordered_json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string load_argument(const std::string &arg) {
  if (arg.empty() || arg[0] != '@')
    return arg;
  std::ifstream in(arg.substr(1));
  if (!in)
    throw InputError("cannot read file '" + arg.substr(1) + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Printer {
public:
  Printer(std::ostream &out, Format format) : out_(out), format_(format) {}

  void layout(const CuteLayout &l) {
    if (format_ == Format::Json)
      out_ << ordered_json{{"layout", to_string(l)}}.dump() << "\n";
    else
      out_ << to_string(l) << "\n";
  }

  void relation(const Relation &r) {
    out_ << print_relation(r, format_) << "\n";
  }

  void relations(
      const std::vector<std::pair<std::string, Relation>> &named) {
    if (format_ == Format::Json) {
      ordered_json j;
      for (const auto &[name, r] : named)
        j[name] = ordered_json::parse(print_relation(r, Format::Json));
      out_ << j.dump() << "\n";
      return;
    }
    for (const auto &[name, r] : named)
      out_ << name << ": " << print_relation(r) << "\n";
  }

  void points(const std::vector<Point> &ps) {
    if (format_ == Format::Json) {
      out_ << ordered_json(ps).dump() << "\n";
      return;
    }
    for (const auto &p : ps)
      out_ << print_point(p) << "\n";
  }

private:
  std::ostream &out_;
  Format format_;
};

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
  CLI::App app{"Layout algebra over bounded integer relations", "layrel"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "text";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  std::function<void(Printer &)> action;
  auto bind = [&](CLI::App *cmd, std::function<void(Printer &)> fn) {
    cmd->callback([&action, fn] { action = fn; });
  };

  // cute
  auto *cute = app.add_subcommand("cute", "CuTe layout operations");
  cute->require_subcommand(1);

  std::string layout_a, layout_b, relation_text, shape_text, strides_text;
  std::int64_t target = 0;

  auto *map = cute->add_subcommand("map", "Coordinate, index and layout mappings");
  map->add_option("layout", layout_a, "Layout, e.g. (4,(2,2)):(2,(1,8))")->required();
  bind(map, [&](Printer &p) {
    const auto l = parse_cute_layout(layout_a);
    p.relations({{"coord", coord_mapping(l.shape())},
                 {"index", index_mapping(l)},
                 {"layout", layout_mapping(l)}});
  });

  auto *comp = cute->add_subcommand("compose", "Layout G after layout F");
  comp->add_option("G", layout_a)->required();
  comp->add_option("F", layout_b)->required();
  bind(comp, [&](Printer &p) {
    p.layout(compose(parse_cute_layout(layout_a), parse_cute_layout(layout_b)));
  });

  auto *compl_cmd = cute->add_subcommand("complement", "Complement up to size D");
  compl_cmd->add_option("layout", layout_a)->required();
  compl_cmd->add_option("D", target)->required();
  bind(compl_cmd, [&](Printer &p) {
    p.layout(complement(parse_cute_layout(layout_a), target));
  });

  const std::vector<std::pair<const char *, CuteLayout (*)(const CuteLayout &)>>
      unary = {{"inverse", &inverse},
               {"left-inverse", &left_inverse},
               {"right-inverse", &right_inverse}};
  for (const auto &[name, fn] : unary) {
    auto *cmd = cute->add_subcommand(name, std::string(name) + " of a layout");
    cmd->add_option("layout", layout_a)->required();
    bind(cmd, [&layout_a, fn = fn](Printer &p) {
      p.layout(fn(parse_cute_layout(layout_a)));
    });
  }

  auto *from = cute->add_subcommand(
      "from-mapping", "Infer a layout from a mapping and its shape or strides");
  from->add_option("relation", relation_text, "Relation literal or @file")->required();
  auto *shape_opt = from->add_option("--shape", shape_text, "Shape of the index mapping");
  auto *strides_opt = from->add_option("--strides", strides_text, "Strides of the layout mapping");
  shape_opt->excludes(strides_opt);
  bind(from, [&](Printer &p) {
    if (shape_text.empty() == strides_text.empty())
      throw InputError("exactly one of --shape and --strides is required");
    const Relation r = parse_relation(load_argument(relation_text));
    if (!shape_text.empty()) {
      p.layout(layout_from_affine(r, parse_int_tuple(shape_text)));
      return;
    }
    const auto strides = parse_int_tuple(strides_text).leaves();
    const auto found = layout_from_strides(r, strides);
    if (!found)
      throw Error(ErrorKind::InvalidMapping,
                  "no shape with these strides reproduces the mapping");
    p.layout(*found);
  });

  auto *alt = cute->add_subcommand("index-for-shape",
                                   "Index mapping through an alternate shape");
  alt->add_option("layout", layout_a)->required();
  alt->add_option("shape", shape_text)->required();
  bind(alt, [&](Printer &p) {
    p.relation(index_mapping_for_shape(parse_cute_layout(layout_a),
                                       parse_int_tuple(shape_text)));
  });

  // swizzle
  auto *swz = app.add_subcommand("swizzle", "Swizzle mappings");
  swz->require_subcommand(1);
  std::vector<std::string> swizzle_args;
  auto *swz_map = swz->add_subcommand("map", "Binary and layout mappings of a swizzle");
  swz_map->add_option("params", swizzle_args, "b m s, or swizzle(b,m,s)")
      ->required()
      ->expected(1, 3);
  bind(swz_map, [&](Printer &p) {
    std::optional<Swizzle> sw;
    if (swizzle_args.size() == 1) {
      sw = parse_swizzle(swizzle_args[0]);
    } else if (swizzle_args.size() == 3) {
      std::vector<std::int64_t> v;
      for (const auto &a : swizzle_args) {
        std::size_t used = 0;
        std::int64_t x = 0;
        try {
          x = std::stoll(a, &used);
        } catch (const std::exception &) {
          used = 0;
        }
        if (used != a.size() || a.empty())
          throw ParseError("expected an integer, found '" + a + "'", 0);
        v.push_back(x);
      }
      sw.emplace(v[0], v[1], v[2]);
    } else {
      throw ParseError("expected b m s or swizzle(b,m,s)", 0);
    }
    p.relations({{"binary", binary_swizzle_mapping(*sw)},
                 {"layout", swizzle_layout_mapping(*sw)}});
  });

  // linear
  auto *lin = app.add_subcommand("linear", "Linear layout mappings");
  lin->require_subcommand(1);
  std::string linear_spec;
  auto *lin_map = lin->add_subcommand("map", "Binary vector and layout mappings");
  lin_map->add_option("spec", linear_spec, "crd=...;idx=...;vals=[...]")->required();
  bind(lin_map, [&](Printer &p) {
    const auto l = parse_linear_layout(load_argument(linear_spec));
    p.relations({{"binary", linear::binary_vector_mapping(l)},
                 {"layout", linear::layout_mapping(l)}});
  });

  // rel
  auto *rel = app.add_subcommand("rel", "Relation utilities");
  rel->require_subcommand(1);
  std::string at_text;
  auto *eval = rel->add_subcommand("eval", "Print a relation or its images at a point");
  eval->add_option("relation", relation_text, "Relation literal or @file")->required();
  eval->add_option("--at", at_text, "Input point, e.g. 2 or (1,2)");
  bind(eval, [&](Printer &p) {
    const Relation r = parse_relation(load_argument(relation_text));
    if (at_text.empty()) {
      p.relation(r);
      return;
    }
    const Point pt = parse_point(at_text);
    if (pt.size() != r.in_arity())
      throw Error(ErrorKind::ArityMismatch,
                  "point has arity " + std::to_string(pt.size()) +
                      ", relation expects " + std::to_string(r.in_arity()));
    const auto images = r.images(pt);
    if (images.empty())
      throw Error(ErrorKind::OutOfDomain,
                  print_point(pt) + " is outside the domain");
    p.points(images);
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Printer printer(out, format_name == "json" ? Format::Json : Format::Text);
  try {
    action(printer);
  } catch (const ParseError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error &e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}

} // namespace layrel

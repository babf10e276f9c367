#include <json.hpp>

#include <stdexcept>

#include "nvsa/rpm.hpp"

namespace nvsa::rpm {

namespace {

using nlohmann::json;

json rule_to_json(const RuleKind& r) {
  json j;
  j["kind"] = rule_name(r);
  if (r.family == RuleFamily::Progression) j["step"] = r.step;
  return j;
}

RuleKind rule_from_json(const json& j) {
  RuleKind r;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") r.family = RuleFamily::Constant;
  else if (kind == "progression") r.family = RuleFamily::Progression;
  else if (kind == "arithmetic_plus") r.family = RuleFamily::ArithmeticPlus;
  else if (kind == "arithmetic_minus") r.family = RuleFamily::ArithmeticMinus;
  else if (kind == "distribute_three") r.family = RuleFamily::DistributeThree;
  else throw std::invalid_argument("unknown rule kind: " + kind);
  if (r.family == RuleFamily::Progression) r.step = j.at("step").get<int>();
  return r;
}

json scene_to_json(const Scene& s) {
  json objs = json::array();
  for (const ObjectSpec& o : s.objects) {
    objs.push_back({{"slot", o.slot}, {"type", o.type}, {"size", o.size},
                    {"color", o.color}});
  }
  return json{{"objects", std::move(objs)}};
}

Scene scene_from_json(const json& j, ConstellationKind kind) {
  Scene s;
  s.constellation = kind;
  for (const json& o : j.at("objects")) {
    s.objects.push_back(ObjectSpec{o.at("slot").get<int>(), o.at("type").get<int>(),
                                   o.at("size").get<int>(), o.at("color").get<int>()});
  }
  return s;
}

}  // namespace

std::string to_jsonl_line(const RpmTest& test) {
  json j;
  j["v"] = 1;
  j["seed"] = test.seed;
  j["constellation"] = constellation_name(test.constellation);
  j["mode"] = answer_mode_name(test.mode);
  json ctx = json::array();
  for (const Scene& s : test.context) ctx.push_back(scene_to_json(s));
  j["context"] = std::move(ctx);
  json cands = json::array();
  for (const Scene& s : test.candidates) cands.push_back(scene_to_json(s));
  j["candidates"] = std::move(cands);
  j["answer_index"] = test.answer_index;
  json rules = json::array();
  for (const ComponentRules& r : test.rules) {
    json rj;
    if (r.has_layout_rule) {
      rj["governed"] = attribute_name(r.governed);
      rj["layout"] = rule_to_json(r.layout);
    } else {
      rj["governed"] = nullptr;
    }
    rj["type"] = rule_to_json(r.type);
    rj["size"] = rule_to_json(r.size);
    rj["color"] = rule_to_json(r.color);
    rules.push_back(std::move(rj));
  }
  j["rules"] = std::move(rules);
  return j.dump();
}

RpmTest from_jsonl_line(const std::string& line) {
  const json j = json::parse(line);
  if (j.at("v").get<int>() != 1) {
    throw std::invalid_argument("unsupported schema version");
  }
  RpmTest test;
  const auto kind = constellation_from_name(j.at("constellation").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown constellation");
  test.constellation = *kind;
  test.seed = j.at("seed").get<std::uint64_t>();
  const auto mode = answer_mode_from_name(j.at("mode").get<std::string>());
  if (!mode) throw std::invalid_argument("unknown answer mode");
  test.mode = *mode;

  const json& ctx = j.at("context");
  const json& cands = j.at("candidates");
  if (ctx.size() != 8 || cands.size() != 8) {
    throw std::invalid_argument("context/candidates must have 8 scenes");
  }
  for (int i = 0; i < 8; ++i) {
    test.context[i] = scene_from_json(ctx[i], test.constellation);
    test.candidates[i] = scene_from_json(cands[i], test.constellation);
  }
  test.answer_index = j.at("answer_index").get<int>();
  if (test.answer_index < 1 || test.answer_index > 8) {
    throw std::invalid_argument("answer_index out of range");
  }
  for (const json& rj : j.at("rules")) {
    ComponentRules r;
    if (!rj.at("governed").is_null()) {
      const std::string g = rj.at("governed").get<std::string>();
      r.has_layout_rule = true;
      r.governed = (g == "position") ? Attribute::Position : Attribute::Number;
      r.layout = rule_from_json(rj.at("layout"));
    }
    r.type = rule_from_json(rj.at("type"));
    r.size = rule_from_json(rj.at("size"));
    r.color = rule_from_json(rj.at("color"));
    test.rules.push_back(r);
  }
  return test;
}

}  // namespace nvsa::rpm

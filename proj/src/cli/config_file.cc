//
// Copyright 2026 The fedpgn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "fedpgn/cli/config_file.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "fedpgn/errors.h"
#include "fedpgn/numerics/format.h"

namespace fedpgn {
namespace {

using json = nlohmann::json;

struct Scalar {
  std::string path;
  std::string text;
  bool is_null = false;
};

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

double ToDouble(const Scalar& s) {
  if (s.is_null) Fail(s.path, "expected a number, got null");
  const std::string& t = s.text;
  if (t == ".inf" || t == "inf" || t == "+inf") {
    return std::numeric_limits<double>::infinity();
  }
  double v = 0.0;
  const char* end = t.data() + t.size();
  const char* first = t.data();
  if (first != end && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, end, v);
  if (ec != std::errc() || ptr != end || t.empty()) {
    Fail(s.path, "expected a number, got '" + t + "'");
  }
  return v;
}

std::size_t ToSize(const Scalar& s) {
  if (s.is_null) Fail(s.path, "expected a non-negative integer, got null");
  std::uint64_t v = 0;
  const std::string& t = s.text;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    Fail(s.path, "expected a non-negative integer, got '" + t + "'");
  }
  return static_cast<std::size_t>(v);
}

bool ToBool(const Scalar& s) {
  if (s.text == "true" || s.text == "yes" || s.text == "on") return true;
  if (s.text == "false" || s.text == "no" || s.text == "off") return false;
  Fail(s.path, "expected true or false, got '" + s.text + "'");
}

std::string ToString(const Scalar& s) {
  if (s.is_null) Fail(s.path, "expected a string, got null");
  return s.text;
}

bool IsNullText(const std::string& t) {
  return t == "null" || t == "~" || t == "auto" || t.empty();
}

json Num(double v) {
  if (!std::isfinite(v)) return FormatDouble(v);
  return v;
}

template <typename T>
json Opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) {
    return Num(*v);
  } else {
    return *v;
  }
}

struct Field {
  std::string path;
  std::function<void(RunConfig&, const Scalar&)> set;
  std::function<json(const RunConfig&)> get;
};

const std::vector<Field>& Fields() {
  static const std::vector<Field>* fields = new std::vector<Field>{
      {"algo",
       [](RunConfig& c, const Scalar& s) {
         try {
           ApplyAlgorithmName(ToString(s), c.algorithm);
         } catch (const ConfigError&) {
           Fail(s.path, "unknown algorithm '" + s.text +
                            "' (expected dp-fedavg, dp-fedsam, dp-fedpgn, "
                            "dp-fedpgn-ls)");
         }
       },
       [](const RunConfig& c) -> json { return AlgorithmName(c.algorithm); }},
      {"algorithm.rho",
       [](RunConfig& c, const Scalar& s) { c.algorithm.rho = ToDouble(s); },
       [](const RunConfig& c) { return Num(c.algorithm.rho); }},
      {"algorithm.beta",
       [](RunConfig& c, const Scalar& s) { c.algorithm.beta = ToDouble(s); },
       [](const RunConfig& c) { return Num(c.algorithm.beta); }},
      {"algorithm.sigma_ls",
       [](RunConfig& c, const Scalar& s) { c.algorithm.sigma_ls = ToDouble(s); },
       [](const RunConfig& c) { return Num(c.algorithm.sigma_ls); }},
      {"algorithm.per_layer_smoothing",
       [](RunConfig& c, const Scalar& s) {
         c.algorithm.per_layer_smoothing = ToBool(s);
       },
       [](const RunConfig& c) -> json { return c.algorithm.per_layer_smoothing; }},
      {"federation.clients",
       [](RunConfig& c, const Scalar& s) { c.num_clients = ToSize(s); },
       [](const RunConfig& c) -> json { return c.num_clients; }},
      {"federation.sampled",
       [](RunConfig& c, const Scalar& s) { c.sampled_clients = ToSize(s); },
       [](const RunConfig& c) -> json { return c.sampled_clients; }},
      {"federation.local_steps",
       [](RunConfig& c, const Scalar& s) { c.local_steps = ToSize(s); },
       [](const RunConfig& c) -> json { return c.local_steps; }},
      {"federation.local_epochs",
       [](RunConfig& c, const Scalar& s) {
         if (s.is_null) {
           c.local_epochs.reset();
         } else {
           c.local_epochs = ToSize(s);
         }
       },
       [](const RunConfig& c) { return Opt(c.local_epochs); }},
      {"federation.rounds",
       [](RunConfig& c, const Scalar& s) { c.rounds = ToSize(s); },
       [](const RunConfig& c) -> json { return c.rounds; }},
      {"federation.batch_size",
       [](RunConfig& c, const Scalar& s) { c.batch_size = ToSize(s); },
       [](const RunConfig& c) -> json { return c.batch_size; }},
      {"federation.local_lr",
       [](RunConfig& c, const Scalar& s) { c.local_lr = ToDouble(s); },
       [](const RunConfig& c) { return Num(c.local_lr); }},
      {"federation.global_lr",
       [](RunConfig& c, const Scalar& s) {
         if (s.is_null) {
           c.global_lr.reset();
         } else {
           c.global_lr = ToDouble(s);
         }
       },
       [](const RunConfig& c) { return Opt(c.global_lr); }},
      {"federation.lr_decay",
       [](RunConfig& c, const Scalar& s) { c.lr_decay = ToDouble(s); },
       [](const RunConfig& c) { return Num(c.lr_decay); }},
      {"privacy.clip",
       [](RunConfig& c, const Scalar& s) {
         if (s.text == "median") {
           c.clip = ClipPolicy::Median();
         } else {
           c.clip = ClipPolicy::Fixed(ToDouble(s));
         }
       },
       [](const RunConfig& c) -> json {
         if (c.clip.mode == ClipMode::kMedian) return "median";
         return Num(c.clip.threshold);
       }},
      {"privacy.noise_multiplier",
       [](RunConfig& c, const Scalar& s) { c.noise_multiplier = ToDouble(s); },
       [](const RunConfig& c) { return Num(c.noise_multiplier); }},
      {"privacy.delta",
       [](RunConfig& c, const Scalar& s) {
         if (s.is_null) {
           c.delta.reset();
         } else {
           c.delta = ToDouble(s);
         }
       },
       [](const RunConfig& c) { return Num(c.ResolvedDelta()); }},
      {"privacy.mixture",
       [](RunConfig& c, const Scalar& s) {
         if (s.text == "standard") {
           c.mixture = MixtureReading::kStandard;
         } else if (s.text == "literal") {
           c.mixture = MixtureReading::kLiteral;
         } else {
           Fail(s.path, "expected standard or literal, got '" + s.text + "'");
         }
       },
       [](const RunConfig& c) -> json { return ToString(c.mixture); }},
      {"model.kind",
       [](RunConfig& c, const Scalar& s) {
         if (s.text == "softmax") {
           c.model.kind = ModelKind::kSoftmaxRegression;
         } else if (s.text == "mlp") {
           c.model.kind = ModelKind::kMlp;
           if (c.model.hidden_width == 0) c.model.hidden_width = 32;
         } else {
           Fail(s.path, "expected softmax or mlp, got '" + s.text + "'");
         }
       },
       [](const RunConfig& c) -> json {
         return c.model.kind == ModelKind::kMlp ? "mlp" : "softmax";
       }},
      {"model.hidden",
       [](RunConfig& c, const Scalar& s) { c.model.hidden_width = ToSize(s); },
       [](const RunConfig& c) -> json { return c.model.hidden_width; }},
      {"model.activation",
       [](RunConfig& c, const Scalar& s) {
         if (s.text == "tanh") {
           c.model.activation = Activation::kTanh;
         } else if (s.text == "relu") {
           c.model.activation = Activation::kRelu;
         } else {
           Fail(s.path, "expected tanh or relu, got '" + s.text + "'");
         }
       },
       [](const RunConfig& c) -> json { return ToString(c.model.activation); }},
      {"dataset.kind",
       [](RunConfig& c, const Scalar& s) {
         if (s.text == "synthetic") {
           c.dataset.kind = DatasetKind::kSynthetic;
         } else if (s.text == "csv") {
           c.dataset.kind = DatasetKind::kCsv;
         } else {
           Fail(s.path, "expected synthetic or csv, got '" + s.text + "'");
         }
       },
       [](const RunConfig& c) -> json {
         return c.dataset.kind == DatasetKind::kCsv ? "csv" : "synthetic";
       }},
      {"dataset.classes",
       [](RunConfig& c, const Scalar& s) {
         c.dataset.synthetic.num_classes = ToSize(s);
       },
       [](const RunConfig& c) -> json { return c.dataset.synthetic.num_classes; }},
      {"dataset.features",
       [](RunConfig& c, const Scalar& s) {
         c.dataset.synthetic.input_dim = ToSize(s);
       },
       [](const RunConfig& c) -> json { return c.dataset.synthetic.input_dim; }},
      {"dataset.per_class",
       [](RunConfig& c, const Scalar& s) {
         c.dataset.synthetic.per_class = ToSize(s);
       },
       [](const RunConfig& c) -> json { return c.dataset.synthetic.per_class; }},
      {"dataset.test_per_class",
       [](RunConfig& c, const Scalar& s) { c.dataset.test_per_class = ToSize(s); },
       [](const RunConfig& c) -> json { return c.dataset.test_per_class; }},
      {"dataset.spread",
       [](RunConfig& c, const Scalar& s) {
         c.dataset.synthetic.spread = ToDouble(s);
       },
       [](const RunConfig& c) { return Num(c.dataset.synthetic.spread); }},
      {"dataset.path",
       [](RunConfig& c, const Scalar& s) {
         c.dataset.path = s.is_null ? "" : s.text;
       },
       [](const RunConfig& c) -> json { return c.dataset.path; }},
      {"dataset.test_path",
       [](RunConfig& c, const Scalar& s) {
         c.dataset.test_path = s.is_null ? "" : s.text;
       },
       [](const RunConfig& c) -> json { return c.dataset.test_path; }},
      {"dataset.header",
       [](RunConfig& c, const Scalar& s) { c.dataset.header = ToBool(s); },
       [](const RunConfig& c) -> json { return c.dataset.header; }},
      {"partition.alpha",
       [](RunConfig& c, const Scalar& s) { c.partition_alpha = ToDouble(s); },
       [](const RunConfig& c) { return Num(c.partition_alpha); }},
      {"partition.min_client_size",
       [](RunConfig& c, const Scalar& s) {
         if (s.is_null) {
           c.min_client_size.reset();
         } else {
           c.min_client_size = ToSize(s);
         }
       },
       [](const RunConfig& c) -> json { return c.ResolvedMinClientSize(); }},
      {"seeds.data",
       [](RunConfig& c, const Scalar& s) { c.seeds.data = ToSize(s); },
       [](const RunConfig& c) -> json { return c.seeds.data; }},
      {"seeds.partition",
       [](RunConfig& c, const Scalar& s) { c.seeds.partition = ToSize(s); },
       [](const RunConfig& c) -> json { return c.seeds.partition; }},
      {"seeds.training",
       [](RunConfig& c, const Scalar& s) { c.seeds.training = ToSize(s); },
       [](const RunConfig& c) -> json { return c.seeds.training; }},
      {"probes.landscape",
       [](RunConfig& c, const Scalar& s) { c.probes.landscape = ToBool(s); },
       [](const RunConfig& c) -> json { return c.probes.landscape; }},
      {"probes.grid",
       [](RunConfig& c, const Scalar& s) { c.probes.grid = ToSize(s); },
       [](const RunConfig& c) -> json { return c.probes.grid; }},
      {"probes.limit",
       [](RunConfig& c, const Scalar& s) { c.probes.limit = ToDouble(s); },
       [](const RunConfig& c) { return Num(c.probes.limit); }},
      {"probes.eval_samples",
       [](RunConfig& c, const Scalar& s) { c.probes.eval_samples = ToSize(s); },
       [](const RunConfig& c) -> json { return c.probes.eval_samples; }},
      {"probes.two_dimensional",
       [](RunConfig& c, const Scalar& s) {
         c.probes.two_dimensional = ToBool(s);
       },
       [](const RunConfig& c) -> json { return c.probes.two_dimensional; }},
      {"probes.rho_probe",
       [](RunConfig& c, const Scalar& s) { c.probes.rho_probe = ToDouble(s); },
       [](const RunConfig& c) { return Num(c.probes.rho_probe); }},
  };
  return *fields;
}

const Field* FindField(const std::string& path) {
  for (const Field& f : Fields()) {
    if (f.path == path) return &f;
  }
  return nullptr;
}

void Flatten(const YAML::Node& node, const std::string& prefix,
             std::vector<Scalar>& out) {
  if (node.IsMap()) {
    for (const auto& kv : node) {
      const std::string key = kv.first.as<std::string>();
      Flatten(kv.second, prefix.empty() ? key : prefix + "." + key, out);
    }
    return;
  }
  if (node.IsNull()) {
    out.push_back({prefix, "", true});
    return;
  }
  if (!node.IsScalar()) Fail(prefix, "expected a scalar value");
  const std::string text = node.Scalar();
  const bool plain_null = node.Tag() != "!" && IsNullText(text);
  out.push_back({prefix, text, plain_null});
}

}  // namespace

Override ParseOverride(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("--set: expected key=value, got '" + text + "'");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

RunConfig LoadRunConfig(const std::string& yaml_text,
                        const std::vector<Override>& overrides) {
  std::vector<Scalar> entries;
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: invalid YAML: ") + e.what());
  }
  if (root.IsDefined() && !root.IsNull()) {
    if (!root.IsMap()) throw ConfigError("config: top level must be a mapping");
    Flatten(root, "", entries);
  }
  for (const Override& o : overrides) {
    entries.push_back({o.path, o.value, IsNullText(o.value)});
  }

  std::string profile = "full";
  for (const Scalar& s : entries) {
    if (s.path == "profile") profile = ToString(s);
  }
  RunConfig cfg;
  try {
    cfg = ProfileDefaults(profile);
  } catch (const ConfigError&) {
    Fail("profile", "unknown profile '" + profile + "' (expected full or desk)");
  }
  for (const Scalar& s : entries) {
    if (s.path == "profile") continue;
    const Field* f = FindField(s.path);
    if (f == nullptr) throw ConfigError(s.path + ": unknown key");
    f->set(cfg, s);
  }
  cfg.Validate();
  return cfg;
}

RunConfig LoadRunConfigFile(const std::filesystem::path& path,
                            const std::vector<Override>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return LoadRunConfig(ss.str(), overrides);
}

nlohmann::json RunConfigToJson(const RunConfig& cfg) {
  json out = json::object();
  for (const Field& f : Fields()) {
    const auto dot = f.path.find('.');
    if (dot == std::string::npos) {
      out[f.path] = f.get(cfg);
    } else {
      out[f.path.substr(0, dot)][f.path.substr(dot + 1)] = f.get(cfg);
    }
  }
  return out;
}

std::string RunConfigToYaml(const RunConfig& cfg) {
  auto scalar = [](const json& v) -> std::string {
    if (v.is_null()) return "null";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return FormatDouble(v.get<double>());
    if (v.is_number()) return v.dump();
    const std::string s = v.get<std::string>();
    // Quote strings that would otherwise read back as another type.
    if (s.empty() || IsNullText(s) || s == "true" || s == "false" ||
        s.find_first_of(":#{}[],&*!|>'\"%@`") != std::string::npos ||
        s.front() == ' ' || s.back() == ' ') {
      return json(s).dump();
    }
    return s;
  };
  std::ostringstream os;
  std::string section;
  for (const Field& f : Fields()) {
    const json v = f.get(cfg);
    const auto dot = f.path.find('.');
    if (dot == std::string::npos) {
      os << f.path << ": " << scalar(v) << '\n';
      continue;
    }
    const std::string head = f.path.substr(0, dot);
    if (head != section) {
      os << head << ":\n";
      section = head;
    }
    os << "  " << f.path.substr(dot + 1) << ": " << scalar(v) << '\n';
  }
  return os.str();
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> out{"profile"};
  for (const Field& f : Fields()) out.push_back(f.path);
  return out;
}

}  // namespace fedpgn

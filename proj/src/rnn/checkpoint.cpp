#include <fstream>

#include <json.hpp>

#include "wrnn/common/error.hpp"
#include "wrnn/rnn/rtrl.hpp"

namespace wrnn::rnn {

void save_checkpoint(const std::filesystem::path& path, const Rnn& net) {
  const RnnConfig& cfg = net.config();
  nlohmann::ordered_json j;
  j["format"] = "wrnn-checkpoint";
  j["version"] = 1;
  j["config"] = {{"p", cfg.p},           {"N", cfg.N},
                 {"beta", cfg.beta},     {"eta", cfg.eta},
                 {"activation", std::string(activation_name(cfg.activation))},
                 {"clip", cfg.clip},     {"seed", cfg.seed}};
  auto acts = nlohmann::ordered_json::array();
  for (const Activation& a : net.activations()) {
    acts.push_back({{"kind", std::string(activation_name(a.kind))}, {"beta", a.beta}});
  }
  j["activations"] = acts;
  auto mask = nlohmann::ordered_json::array();
  auto weights = nlohmann::ordered_json::array();
  for (int i = 0; i < net.neurons(); ++i) {
    std::string bits;
    std::vector<double> row;
    for (int l = 0; l < net.width(); ++l) {
      bits.push_back(net.mask()(i, l) ? '1' : '0');
      row.push_back(net.weights()(i, l));
    }
    mask.push_back(bits);
    weights.push_back(row);
  }
  j["mask"] = mask;
  j["weights"] = weights;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot write checkpoint " + path.string());
  out << j.dump(1) << '\n';
  if (!out) fail(ErrorCode::IoError, "failed writing " + path.string());
}

Rnn load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot read checkpoint " + path.string());
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.at("format") != "wrnn-checkpoint" || j.at("version") != 1) {
      fail(ErrorCode::ParseError, path.string() + " is not a version 1 checkpoint");
    }
    const auto& c = j.at("config");
    RnnConfig cfg;
    cfg.p = c.at("p").get<int>();
    cfg.N = c.at("N").get<int>();
    cfg.beta = c.at("beta").get<double>();
    cfg.eta = c.at("eta").get<double>();
    cfg.activation = parse_activation(c.at("activation").get<std::string>());
    cfg.clip = c.at("clip").get<double>();
    cfg.seed = c.at("seed").get<std::uint64_t>();
    std::vector<Activation> acts;
    for (const auto& a : j.at("activations")) {
      acts.push_back({parse_activation(a.at("kind").get<std::string>()), a.at("beta").get<double>()});
    }
    const auto& mask_rows = j.at("mask");
    const auto& weight_rows = j.at("weights");
    if (static_cast<int>(mask_rows.size()) != cfg.N || static_cast<int>(weight_rows.size()) != cfg.N) {
      fail(ErrorCode::ParseError, path.string() + ": row count does not match N");
    }
    Rnn::Mask mask(cfg.N, cfg.width());
    Rnn::Matrix W(cfg.N, cfg.width());
    for (int i = 0; i < cfg.N; ++i) {
      const auto bits = mask_rows[static_cast<std::size_t>(i)].get<std::string>();
      const auto row = weight_rows[static_cast<std::size_t>(i)].get<std::vector<double>>();
      if (static_cast<int>(bits.size()) != cfg.width() || static_cast<int>(row.size()) != cfg.width()) {
        fail(ErrorCode::ParseError, path.string() + ": row width does not match p+N+1");
      }
      for (int l = 0; l < cfg.width(); ++l) {
        mask(i, l) = bits[static_cast<std::size_t>(l)] == '1' ? 1 : 0;
        W(i, l) = row[static_cast<std::size_t>(l)];
      }
    }
    Rnn net(cfg, std::move(acts), std::move(mask));
    net.set_weights(W);
    return net;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, path.string() + ": " + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) fail(ErrorCode::ParseError, path.string() + ": " + e.what());
    throw;
  }
}

}  // namespace wrnn::rnn

#include "exadam/trace.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

namespace exadam {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void RunTrace::write_csv(std::ostream& out) const {
  out << "epoch,train_loss,train_accuracy,val_loss,val_accuracy,lr\n";
  for (const EpochRecord& r : epochs) {
    out << r.epoch << ',' << format_double(r.train_loss) << ',' << format_double(r.train_accuracy)
        << ',' << format_double(r.val_loss) << ',' << format_double(r.val_accuracy) << ','
        << format_double(r.lr) << '\n';
  }
}

std::string RunTrace::to_csv() const {
  std::ostringstream out;
  write_csv(out);
  return out.str();
}

nlohmann::json RunTrace::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const EpochRecord& r : epochs) {
    rows.push_back({{"epoch", r.epoch},
                    {"train_loss", r.train_loss},
                    {"train_accuracy", r.train_accuracy},
                    {"val_loss", r.val_loss},
                    {"val_accuracy", r.val_accuracy},
                    {"lr", r.lr}});
  }
  nlohmann::json j{{"optimizer", optimizer}, {"problem", problem}, {"seed", seed},
                   {"epochs", rows}};
  if (!step_loss.empty()) j["step_loss"] = step_loss;
  return j;
}

RunTrace RunTrace::from_json(const nlohmann::json& j) {
  RunTrace t;
  t.optimizer = j.at("optimizer").get<std::string>();
  t.problem = j.at("problem").get<std::string>();
  t.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& row : j.at("epochs")) {
    EpochRecord r;
    r.epoch = row.at("epoch").get<std::size_t>();
    r.train_loss = row.at("train_loss").get<double>();
    r.train_accuracy = row.at("train_accuracy").get<double>();
    r.val_loss = row.at("val_loss").get<double>();
    r.val_accuracy = row.at("val_accuracy").get<double>();
    r.lr = row.at("lr").get<double>();
    t.epochs.push_back(r);
  }
  if (j.contains("step_loss")) t.step_loss = j.at("step_loss").get<std::vector<double>>();
  return t;
}

std::uint64_t RunTrace::content_hash() const {
  const std::string csv = to_csv();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : csv) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace exadam

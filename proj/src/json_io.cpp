#include "facloc/json_io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace facloc {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end)
    throw std::invalid_argument("parse_double: bad number '" + s + "'");
  return v;
}

nlohmann::json instance_to_json(const Instance& P) {
  nlohmann::json j;
  j["dim"] = P.dim();
  nlohmann::json atoms = nlohmann::json::array();
  for (const Atom& a : P.atoms()) {
    nlohmann::json atom;
    nlohmann::json point = nlohmann::json::array();
    for (int k = 0; k < P.dim(); ++k) point.push_back(format_double(a.point[k]));
    atom["point"] = std::move(point);
    atom["mult"] = a.mult;
    atoms.push_back(std::move(atom));
  }
  j["atoms"] = std::move(atoms);
  if (P.meta()) {
    nlohmann::json meta;
    meta["recipe"] = P.meta()->recipe;
    nlohmann::json params;
    for (const auto& [k, v] : P.meta()->params) params[k] = v;
    meta["params"] = std::move(params);
    j["meta"] = std::move(meta);
  }
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  const int dim = j.at("dim").get<int>();
  std::vector<Atom> atoms;
  for (const auto& atom : j.at("atoms")) {
    Vec p(dim);
    const auto& point = atom.at("point");
    if (static_cast<int>(point.size()) != dim)
      throw std::invalid_argument("instance_from_json: point length mismatch");
    for (int k = 0; k < dim; ++k) p[k] = parse_double(point[k].get<std::string>());
    atoms.push_back({std::move(p), atom.at("mult").get<std::int64_t>()});
  }
  std::optional<InstanceMeta> meta;
  if (j.contains("meta")) {
    InstanceMeta m;
    m.recipe = j["meta"].at("recipe").get<std::string>();
    if (j["meta"].contains("params"))
      for (const auto& [k, v] : j["meta"]["params"].items())
        m.params.emplace_back(k, v.get<double>());
    meta = std::move(m);
  }
  return Instance(dim, std::move(atoms), std::move(meta));
}

void save_instance(const Instance& P, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_instance: cannot open " + path);
  out << instance_to_json(P).dump(2) << '\n';
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_instance: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return instance_from_json(j);
}

std::string stable_hash_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = hex[h & 0xF];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf);
}

}  // namespace facloc

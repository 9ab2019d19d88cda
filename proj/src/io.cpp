#include "qord/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "qord/errors.hpp"

namespace qord {

namespace {

double number_at(const Json& j) {
  if (!j.is_number()) throw ParseError("expected a number in a matrix entry");
  return j.get<double>();
}

}  // namespace

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix cmatrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("matrix must be a nonempty array of rows");
  const size_t rows = j.size();
  const Json& first = j.at(0);
  if (!first.is_array() || first.empty())
    throw ParseError("matrix rows must be nonempty arrays");
  const size_t cols = first.size();
  CMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (size_t i = 0; i < rows; ++i) {
    const Json& row = j.at(i);
    if (!row.is_array() || row.size() != cols)
      throw ParseError("matrix rows have inconsistent lengths");
    for (size_t c = 0; c < cols; ++c) {
      const Json& entry = row.at(c);
      if (!entry.is_array() || entry.size() != 2)
        throw ParseError("matrix entries must be [re, im] pairs");
      m(static_cast<Index>(i), static_cast<Index>(c)) =
          Complex(number_at(entry.at(0)), number_at(entry.at(1)));
    }
  }
  return m;
}

Json to_json(const Observable& a) {
  Json effects = Json::array();
  for (const CMatrix& e : a.effects) effects.push_back(to_json(e));
  return Json{{"dim", a.dim}, {"effects", std::move(effects)}};
}

Json to_json(const Channel& c) {
  Json kraus = Json::array();
  for (const CMatrix& k : c.kraus) kraus.push_back(to_json(k));
  return Json{{"dim_in", c.dim_in},
              {"dim_out", c.dim_out},
              {"kraus", std::move(kraus)}};
}

Json to_json(const Instrument& instr) {
  Json branches = Json::array();
  for (const auto& branch : instr.branches) {
    Json b = Json::array();
    for (const CMatrix& k : branch) b.push_back(to_json(k));
    branches.push_back(std::move(b));
  }
  return Json{{"dim_in", instr.dim_in},
              {"dim_out", instr.dim_out},
              {"branches", std::move(branches)}};
}

Json to_json(const NaimarkDilation& d) {
  Json pvm = Json::array();
  for (const CMatrix& p : d.pvm) pvm.push_back(to_json(p));
  return Json{{"dim", d.dim},
              {"dilation_dim", d.dilation_dim},
              {"outcomes", d.outcomes},
              {"isometry", to_json(d.isometry)},
              {"pvm", std::move(pvm)}};
}

Observable observable_from_json(const Json& payload) {
  try {
    Observable a;
    a.dim = payload.at("dim").get<Index>();
    for (const Json& e : payload.at("effects"))
      a.effects.push_back(cmatrix_from_json(e));
    return a;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("observable payload: ") + e.what());
  }
}

Channel channel_from_json(const Json& payload) {
  try {
    Channel c;
    c.dim_in = payload.at("dim_in").get<Index>();
    c.dim_out = payload.at("dim_out").get<Index>();
    for (const Json& k : payload.at("kraus"))
      c.kraus.push_back(cmatrix_from_json(k));
    return c;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("channel payload: ") + e.what());
  }
}

Instrument instrument_from_json(const Json& payload) {
  try {
    Instrument instr;
    instr.dim_in = payload.at("dim_in").get<Index>();
    instr.dim_out = payload.at("dim_out").get<Index>();
    for (const Json& branch : payload.at("branches")) {
      std::vector<CMatrix> ks;
      for (const Json& k : branch) ks.push_back(cmatrix_from_json(k));
      instr.branches.push_back(std::move(ks));
    }
    return instr;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("instrument payload: ") + e.what());
  }
}

Json device_file(const std::string& kind, Json payload) {
  return Json{{"kind", kind},
              {"schema_version", 1},
              {"payload", std::move(payload)}};
}

LoadedDevice load_device(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }

  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }

  try {
    LoadedDevice dev;
    dev.kind = j.at("kind").get<std::string>();
    if (j.at("schema_version").get<int>() != 1)
      throw ParseError("unsupported schema_version in " + path);
    dev.payload = j.at("payload");
    return dev;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("device envelope: ") + e.what());
  }
}

namespace {

Json expect_kind(const std::string& path, const std::string& kind) {
  LoadedDevice dev = load_device(path);
  if (dev.kind != kind)
    throw ParseError(path + ": expected kind \"" + kind + "\", found \"" +
                     dev.kind + "\"");
  return std::move(dev.payload);
}

}  // namespace

Observable load_observable(const std::string& path) {
  return observable_from_json(expect_kind(path, "observable"));
}

Channel load_channel(const std::string& path) {
  return channel_from_json(expect_kind(path, "channel"));
}

Instrument load_instrument(const std::string& path) {
  return instrument_from_json(expect_kind(path, "instrument"));
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

}  // namespace qord

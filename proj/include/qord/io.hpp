#ifndef QORD_IO_HPP
#define QORD_IO_HPP

#include <string>

#include <json.hpp>

#include "qord/dilation.hpp"
#include "qord/instrument.hpp"

namespace qord {

using Json = nlohmann::json;

// Complex entries are [re, im]; matrices are arrays of rows.
Json to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const Json& j);

Json to_json(const Observable& a);
Json to_json(const Channel& c);
Json to_json(const Instrument& instr);
Json to_json(const NaimarkDilation& d);

Observable observable_from_json(const Json& payload);
Channel channel_from_json(const Json& payload);
Instrument instrument_from_json(const Json& payload);

/// Device envelope: {"kind": ..., "schema_version": 1, "payload": ...}.
Json device_file(const std::string& kind, Json payload);

struct LoadedDevice {
  std::string kind;
  Json payload;
};

/// Reads and unwraps a device file; "-" reads stdin. Malformed JSON, a
/// missing envelope field, or an unknown schema version throw ParseError
/// with position information where the parser provides it.
LoadedDevice load_device(const std::string& path);

/// Typed loaders; throw ParseError when the file's kind does not match.
Observable load_observable(const std::string& path);
Channel load_channel(const std::string& path);
Instrument load_instrument(const std::string& path);

/// Writes text to a file, or to stdout when path is "-".
void write_text(const std::string& path, const std::string& text);

}  // namespace qord

#endif

#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "json.hpp"
#include "phifrac/cifs.hpp"
#include "phifrac/fif.hpp"
#include "phifrac/sfs.hpp"
#include "phifrac/trajectory.hpp"

/// JSON descriptors for the library types. Every parser takes the dotted
/// path of the value it reads and reports failures as
/// ErrorKind::InvalidInput naming that path.
namespace phifrac::config {

using Json = nlohmann::json;

/// {"family": "linear" | "ratio_shift" | "rakotch", "params": [...]};
/// rakotch params are [c, s] for alpha(t) = c s / (s + t).
ComparisonFunction parse_phi(const Json& j, const std::string& path);
Json to_json(const ComparisonFunction& phi);

/// {"lo": [...], "hi": [...]}
Box parse_box(const Json& j, const std::string& path);
Json to_json(const Box& box);

/// {"kind": "affine1d", "a", "b"} | {"kind": "affine2d", "matrix": [[..],[..]],
/// "shift": [..]} | {"kind": "reciprocal"} | {"kind": "mobius"}, each with an
/// optional "phi".
ContractiveMap parse_map(const Json& j, const Box& domain, const std::string& path);

/// {"prefix": [...], "tail": {"repeat": [...]}}; a bare array is a pure
/// periodic repetition.
template <class T, class ParseItem>
IndexedFamily<T> parse_family(const Json& j, const std::string& path, ParseItem parse_item);

ComparisonChain parse_chain(const Json& j, const std::string& path);
MapSequence parse_map_sequence(const Json& j, const Box& domain, const std::string& path);

/// {"maps": [...]}
FunctionSystem parse_system(const Json& j, const Box& domain, const std::string& path);
SfsSequence parse_sfs(const Json& j, const Box& domain, const std::string& path);

/// {"kind": "affine1d_geometric", "a0", "a_ratio", "b0", "b_ratio", "phi"?}:
/// f_i(x) = a0 a_ratio^(i-1) x + b0 b_ratio^(i-1).
CifsSystem parse_cifs(const Json& j, const Box& domain, const std::string& path);

/// {"points": [[..], ...]} | {"sample": {"pitch": p}} (whole domain) |
/// {"sample": {"box": {...}, "pitch": p}} | {"csv": "file"}
CompactSet parse_initial_set(const Json& j, const Box& domain,
                             const std::filesystem::path& base_dir, const std::string& path);

/// "data": [[x, y], ...] or "data_csv": "file", optional "range": [a, b].
std::shared_ptr<const InterpolationData> parse_data(const Json& root,
                                                    const std::filesystem::path& base_dir);

/// {"vertical": "scale", "s": 0.3} | {"vertical": "mobius"} |
/// {"verticals": [ ... one per segment ... ]}
FifOperatorStage parse_stage(const Json& j, std::shared_ptr<const InterpolationData> data,
                             const std::string& path);
StageSchedule parse_schedule(const Json& j, std::shared_ptr<const InterpolationData> data,
                             const std::string& path);

// Scalar readers shared with the runner.
const Json& field(const Json& j, const std::string& key, const std::string& path);
double number(const Json& j, const std::string& path);
std::string text(const Json& j, const std::string& path);
std::string join(const std::string& path, const std::string& key);

} // namespace phifrac::config

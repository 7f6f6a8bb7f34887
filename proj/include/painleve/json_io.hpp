#ifndef PAINLEVE_JSON_IO_HPP
#define PAINLEVE_JSON_IO_HPP

#include <json.hpp>

#include "painleve/balance.hpp"
#include "painleve/ellipsoid.hpp"
#include "painleve/linalg.hpp"
#include "painleve/numeric.hpp"
#include "painleve/recursion.hpp"

namespace painleve {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& x);
Rational rational_from_json(const Json& j);

Json vector_json(const QVector& v);
QVector vector_from_json(const Json& j);

Json matrix_json(const QMatrix& m);
QMatrix matrix_from_json(const Json& j);

Json system_json(const QuadraticSystem& sys);

Json balance_json(const Balance& bal);
Balance balance_from_json(const Json& j);

Json series_json(const SeriesSolution& sol);
SeriesSolution series_from_json(const Json& j);

Json resonance_report_json(const ResonanceReport& rep);

Json points_json(const std::vector<EllipsoidPoint>& points);

Json trajectory_json(const Trajectory& traj);
std::string trajectory_csv(const QuadraticSystem& sys, const Trajectory& traj);

}  // namespace painleve

#endif

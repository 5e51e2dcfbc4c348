#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netreg/regress.hpp"

namespace netreg {

using Date = std::chrono::year_month_day;

Date parse_date(const std::string& iso, const std::string& context = "");
std::string format_date(const Date& d);

/// Saturday or Sunday.
bool is_weekend(const Date& d);

/// One trip: date, endpoint regions, rider count.
struct TripRecord {
    Date date;
    int pickup_region = 0;
    int dropoff_region = 0;
    long passengers = 0;
};

struct AggregationResult {
    std::map<Date, Graph> graphs;
    long accepted = 0;
    long rejected = 0; // out-of-range region ids, counted not fatal
};

/// Builds one graph per date: w_ij = total passengers between regions i and
/// j in either direction that day. Intra-region trips are discarded (no
/// self-loops) without counting as rejections. Order-independent over the
/// trip stream.
AggregationResult aggregate_trips(const std::vector<TripRecord>& trips, int regions);

/// Joins daily graphs with covariates x = (weekend indicator, case count),
/// ordered by date ascending. A graph date without a case count throws
/// JoinError listing the dates.
Dataset join_covariates(const std::map<Date, Graph>& graphs, const std::map<Date, double>& cases);

/// trips.csv: header "date,pickup_region,dropoff_region,passengers",
/// ISO-8601 dates. An optional zone map (see read_zone_map_csv) translates
/// raw zone ids to region ids first.
std::vector<TripRecord> read_trips_csv(const std::filesystem::path& path,
                                       const std::map<int, int>* zone_map = nullptr);

/// cases.csv: header "date,cases".
std::map<Date, double> read_cases_csv(const std::filesystem::path& path);

/// zone map csv: header "zone_id,region_id".
std::map<int, int> read_zone_map_csv(const std::filesystem::path& path);

/// Dataset directory layout:
///   covariates.csv  - header "id,x1,..,xp", one row per sample, row order
///                     defines the dataset order
///   graphs/<id>.csv - edge list per sample (header "i,j,w")
///   manifest.json   - n, k, p, node labels, optional provenance notes
void save_dataset(const Dataset& ds, const std::filesystem::path& dir,
                  const std::vector<std::string>& node_labels = {},
                  const std::map<std::string, std::string>& notes = {});

/// Loads and re-validates a dataset directory; every graph is checked
/// against the manifest node count and the Graph invariants.
Dataset load_dataset(const std::filesystem::path& dir);

} // namespace netreg

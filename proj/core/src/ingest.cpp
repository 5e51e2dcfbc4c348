#include "netreg/ingest.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace netreg {

namespace {

std::string where(const std::string& context, int line) {
    return context + ":" + std::to_string(line);
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open " + path.string());
    return in;
}

// Reads a CSV line, strips a trailing CR, skips blank lines. Returns false
// at end of file.
bool next_row(std::istream& in, std::string& line, int& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return true;
    }
    return false;
}

void expect_header(std::istream& in, const std::string& expected, const std::string& context,
                   int& lineno) {
    std::string line;
    if (!next_row(in, line, lineno) || line != expected) {
        throw LoadError(where(context, lineno) + ": expected header \"" + expected + "\", got \"" +
                        line + "\"");
    }
}

long parse_long(const std::string& cell, const std::string& ctx) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(cell, &pos);
    } catch (const std::exception&) {
        throw LoadError(ctx + ": expected an integer, got \"" + cell + "\"");
    }
    if (pos != cell.size()) throw LoadError(ctx + ": trailing characters in \"" + cell + "\"");
    return v;
}

double parse_double(const std::string& cell, const std::string& ctx) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(cell, &pos);
    } catch (const std::exception&) {
        throw LoadError(ctx + ": expected a number, got \"" + cell + "\"");
    }
    if (pos != cell.size()) throw LoadError(ctx + ": trailing characters in \"" + cell + "\"");
    return v;
}

} // namespace

Date parse_date(const std::string& iso, const std::string& context) {
    int y = 0, m = 0, d = 0;
    char s1 = 0, s2 = 0;
    std::istringstream in(iso);
    if (!(in >> y >> s1 >> m >> s2 >> d) || s1 != '-' || s2 != '-' || !in.eof()) {
        throw LoadError((context.empty() ? std::string("date") : context) +
                        ": expected ISO-8601 YYYY-MM-DD, got \"" + iso + "\"");
    }
    const Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                    std::chrono::day{static_cast<unsigned>(d)}};
    if (!date.ok()) {
        throw LoadError((context.empty() ? std::string("date") : context) +
                        ": invalid calendar date \"" + iso + "\"");
    }
    return date;
}

std::string format_date(const Date& d) {
    std::ostringstream out;
    out << std::setfill('0') << std::setw(4) << static_cast<int>(d.year()) << '-' << std::setw(2)
        << static_cast<unsigned>(d.month()) << '-' << std::setw(2)
        << static_cast<unsigned>(d.day());
    return out.str();
}

bool is_weekend(const Date& d) {
    const std::chrono::weekday wd{std::chrono::sys_days{d}};
    return wd == std::chrono::Saturday || wd == std::chrono::Sunday;
}

AggregationResult aggregate_trips(const std::vector<TripRecord>& trips, int regions) {
    if (regions < 1) throw Error("aggregate_trips: regions must be positive");
    AggregationResult result;
    std::map<Date, Eigen::MatrixXd> acc;
    for (const auto& trip : trips) {
        if (trip.pickup_region < 0 || trip.pickup_region >= regions || trip.dropoff_region < 0 ||
            trip.dropoff_region >= regions || trip.passengers < 0) {
            ++result.rejected;
            continue;
        }
        if (trip.pickup_region == trip.dropoff_region) continue; // no self-loops
        auto [it, inserted] = acc.try_emplace(trip.date, Eigen::MatrixXd::Zero(regions, regions));
        it->second(trip.pickup_region, trip.dropoff_region) += static_cast<double>(trip.passengers);
        it->second(trip.dropoff_region, trip.pickup_region) += static_cast<double>(trip.passengers);
        ++result.accepted;
    }
    for (auto& [date, w] : acc) result.graphs.emplace(date, Graph(std::move(w)));
    return result;
}

Dataset join_covariates(const std::map<Date, Graph>& graphs, const std::map<Date, double>& cases) {
    std::vector<std::string> missing;
    std::vector<std::pair<Eigen::VectorXd, Graph>> pairs;
    pairs.reserve(graphs.size());
    for (const auto& [date, graph] : graphs) { // std::map: ascending by date
        const auto it = cases.find(date);
        if (it == cases.end()) {
            missing.push_back(format_date(date));
            continue;
        }
        Eigen::VectorXd x(2);
        x << (is_weekend(date) ? 1.0 : 0.0), it->second;
        pairs.emplace_back(std::move(x), graph);
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& d : missing) list += (list.empty() ? "" : ", ") + d;
        throw JoinError("join_covariates: no case count for dates: " + list);
    }
    return Dataset(std::move(pairs));
}

std::vector<TripRecord> read_trips_csv(const std::filesystem::path& path,
                                       const std::map<int, int>* zone_map) {
    std::ifstream in = open_or_throw(path);
    const std::string ctx = path.filename().string();
    int lineno = 0;
    expect_header(in, "date,pickup_region,dropoff_region,passengers", ctx, lineno);
    std::vector<TripRecord> trips;
    std::string line;
    while (next_row(in, line, lineno)) {
        const auto cells = split_csv_row(line);
        if (cells.size() != 4) {
            throw LoadError(where(ctx, lineno) + ": expected 4 columns, got " +
                            std::to_string(cells.size()));
        }
        TripRecord trip;
        trip.date = parse_date(cells[0], where(ctx, lineno));
        int pickup = static_cast<int>(parse_long(cells[1], where(ctx, lineno)));
        int dropoff = static_cast<int>(parse_long(cells[2], where(ctx, lineno)));
        if (zone_map) {
            // Unknown zones map to -1 and are rejected during aggregation.
            const auto pu = zone_map->find(pickup);
            const auto dr = zone_map->find(dropoff);
            pickup = pu == zone_map->end() ? -1 : pu->second;
            dropoff = dr == zone_map->end() ? -1 : dr->second;
        }
        trip.pickup_region = pickup;
        trip.dropoff_region = dropoff;
        trip.passengers = parse_long(cells[3], where(ctx, lineno));
        trips.push_back(trip);
    }
    return trips;
}

std::map<Date, double> read_cases_csv(const std::filesystem::path& path) {
    std::ifstream in = open_or_throw(path);
    const std::string ctx = path.filename().string();
    int lineno = 0;
    expect_header(in, "date,cases", ctx, lineno);
    std::map<Date, double> cases;
    std::string line;
    while (next_row(in, line, lineno)) {
        const auto cells = split_csv_row(line);
        if (cells.size() != 2) {
            throw LoadError(where(ctx, lineno) + ": expected 2 columns");
        }
        const Date date = parse_date(cells[0], where(ctx, lineno));
        const double count = parse_double(cells[1], where(ctx, lineno));
        if (count < 0) throw LoadError(where(ctx, lineno) + ": negative case count");
        if (!cases.emplace(date, count).second) {
            throw LoadError(where(ctx, lineno) + ": duplicate date " + cells[0]);
        }
    }
    return cases;
}

std::map<int, int> read_zone_map_csv(const std::filesystem::path& path) {
    std::ifstream in = open_or_throw(path);
    const std::string ctx = path.filename().string();
    int lineno = 0;
    expect_header(in, "zone_id,region_id", ctx, lineno);
    std::map<int, int> zones;
    std::string line;
    while (next_row(in, line, lineno)) {
        const auto cells = split_csv_row(line);
        if (cells.size() != 2) {
            throw LoadError(where(ctx, lineno) + ": expected 2 columns");
        }
        const int zone = static_cast<int>(parse_long(cells[0], where(ctx, lineno)));
        const int region = static_cast<int>(parse_long(cells[1], where(ctx, lineno)));
        if (!zones.emplace(zone, region).second) {
            throw LoadError(where(ctx, lineno) + ": duplicate zone id " + cells[0]);
        }
    }
    return zones;
}

void save_dataset(const Dataset& ds, const std::filesystem::path& dir,
                  const std::vector<std::string>& node_labels,
                  const std::map<std::string, std::string>& notes) {
    namespace fs = std::filesystem;
    fs::create_directories(dir / "graphs");

    {
        std::ofstream out(dir / "covariates.csv");
        out << std::setprecision(std::numeric_limits<double>::max_digits10);
        out << "id";
        for (Eigen::Index j = 0; j < ds.covariate_dim(); ++j) out << ",x" << (j + 1);
        out << '\n';
        for (Eigen::Index i = 0; i < ds.size(); ++i) {
            out << i;
            for (Eigen::Index j = 0; j < ds.covariate_dim(); ++j) out << ',' << ds.x(i)[j];
            out << '\n';
        }
    }
    for (Eigen::Index i = 0; i < ds.size(); ++i) {
        std::ofstream out(dir / "graphs" / (std::to_string(i) + ".csv"));
        write_edge_csv(out, ds.graph(i));
    }
    nlohmann::json manifest;
    manifest["n"] = ds.size();
    manifest["k"] = ds.node_count();
    manifest["p"] = ds.covariate_dim();
    if (node_labels.empty()) {
        std::vector<std::string> labels;
        labels.reserve(static_cast<std::size_t>(ds.node_count()));
        for (Eigen::Index i = 0; i < ds.node_count(); ++i) labels.push_back(std::to_string(i));
        manifest["node_labels"] = labels;
    } else {
        if (static_cast<Eigen::Index>(node_labels.size()) != ds.node_count()) {
            throw Error("save_dataset: node_labels size must match node count");
        }
        manifest["node_labels"] = node_labels;
    }
    for (const auto& [key, value] : notes) manifest["notes"][key] = value;
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2) << '\n';
}

Dataset load_dataset(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    const fs::path manifest_path = dir / "manifest.json";
    std::ifstream manifest_in = open_or_throw(manifest_path);
    nlohmann::json manifest;
    try {
        manifest_in >> manifest;
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(manifest_path.string() + ": " + e.what());
    }
    const Eigen::Index k = manifest.at("k").get<Eigen::Index>();
    const Eigen::Index p = manifest.at("p").get<Eigen::Index>();
    if (k < 1 || p < 1) throw LoadError(manifest_path.string() + ": k and p must be positive");

    std::ifstream cov = open_or_throw(dir / "covariates.csv");
    const std::string ctx = "covariates.csv";
    int lineno = 0;
    std::string expected = "id";
    for (Eigen::Index j = 0; j < p; ++j) expected += ",x" + std::to_string(j + 1);
    expect_header(cov, expected, ctx, lineno);

    std::vector<std::pair<Eigen::VectorXd, Graph>> pairs;
    std::string line;
    while (next_row(cov, line, lineno)) {
        const auto cells = split_csv_row(line);
        if (static_cast<Eigen::Index>(cells.size()) != p + 1) {
            throw LoadError(where(ctx, lineno) + ": expected " + std::to_string(p + 1) +
                            " columns");
        }
        const std::string id = cells[0];
        Eigen::VectorXd x(p);
        for (Eigen::Index j = 0; j < p; ++j) {
            x[j] = parse_double(cells[static_cast<std::size_t>(j) + 1], where(ctx, lineno));
        }
        const fs::path graph_path = dir / "graphs" / (id + ".csv");
        std::ifstream graph_in(graph_path);
        if (!graph_in) {
            throw LoadError(where(ctx, lineno) + ": missing graph file " + graph_path.string());
        }
        pairs.emplace_back(std::move(x), read_edge_csv(graph_in, k, graph_path.string()));
    }
    if (pairs.empty()) throw InsufficientData("load_dataset: covariates.csv has no rows");
    Dataset ds(std::move(pairs));
    if (manifest.contains("n") && manifest.at("n").get<Eigen::Index>() != ds.size()) {
        throw LoadError(manifest_path.string() + ": manifest n does not match covariates.csv");
    }
    return ds;
}

} // namespace netreg

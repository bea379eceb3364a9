#include "relm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "relm/rng.hpp"

namespace relm {

namespace {

constexpr const char* kMissingCategory = "<missing>";

bool is_missing(const std::string& cell) { return cell.empty() || cell == "?"; }

std::string role_name(ColumnRole role) {
    switch (role) {
        case ColumnRole::Numeric: return "numeric";
        case ColumnRole::Categorical: return "categorical";
        case ColumnRole::Label: return "label";
    }
    return "?";
}

ColumnRole role_from_name(const std::string& name) {
    if (name == "numeric") return ColumnRole::Numeric;
    if (name == "categorical") return ColumnRole::Categorical;
    if (name == "label") return ColumnRole::Label;
    throw Error("unknown column type '" + name + "' (expected numeric|categorical|label)");
}

std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

void csv_append_cell(std::string& out, const std::string& cell) {
    if (cell.find_first_of(",\"\n\r") == std::string::npos) {
        out += cell;
        return;
    }
    out += '"';
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

/// Splits CSV text into records of cells. Handles quoted cells with doubled
/// quotes and embedded separators/newlines; accepts CRLF and LF endings.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string cell;
    bool quoted = false;
    bool cell_started = false;

    auto end_cell = [&] {
        record.push_back(std::move(cell));
        cell.clear();
        cell_started = false;
    };
    auto end_record = [&] {
        end_cell();
        records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!cell_started && cell.empty()) {
                    quoted = true;
                    cell_started = true;
                } else {
                    cell += c;  // stray quote inside an unquoted cell, keep it
                }
                break;
            case ',': end_cell(); break;
            case '\r': break;
            case '\n': end_record(); break;
            default:
                cell += c;
                cell_started = true;
                break;
        }
    }
    if (!cell.empty() || cell_started || !record.empty()) end_record();
    return records;
}

std::vector<int> shuffled_indices(const std::vector<int>& rows, Rng& rng) {
    std::vector<int> order = rows;
    for (std::size_t i = order.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(order[i - 1], order[j]);
    }
    return order;
}

}  // namespace

int DatasetSchema::label_index() const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i].role == ColumnRole::Label) return static_cast<int>(i);
    return -1;
}

void DatasetSchema::validate(bool allow_missing_label) const {
    int labels = 0;
    int features = 0;
    std::vector<std::string> names;
    for (const auto& col : columns) {
        if (col.role == ColumnRole::Label) ++labels;
        else ++features;
        names.push_back(col.name);
    }
    if (labels > 1 || (labels != 1 && !allow_missing_label))
        throw Error("schema must declare exactly one label column");
    if (features < 1) throw Error("schema must declare at least one feature column");
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end())
        throw Error("schema column names must be unique");
}

DatasetSchema DatasetSchema::from_json_text(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    DatasetSchema schema;
    for (const auto& col : doc.at("columns"))
        schema.columns.push_back({col.at("name").get<std::string>(),
                                  role_from_name(col.at("type").get<std::string>())});
    schema.validate(/*allow_missing_label=*/true);  // feature-only schemas serve prediction
    return schema;
}

DatasetSchema DatasetSchema::from_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open schema file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return from_json_text(buf.str());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("schema file " + path + ": " + e.what());
    }
}

DatasetSchema DatasetSchema::from_spec_string(const std::string& text) {
    DatasetSchema schema;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        const std::string entry = text.substr(start, end - start);
        const std::size_t colon = entry.find(':');
        if (entry.empty() || colon == std::string::npos || colon == 0)
            throw Error("bad schema entry '" + entry + "' (expected name:numeric|categorical|label)");
        schema.columns.push_back({entry.substr(0, colon), role_from_name(entry.substr(colon + 1))});
        start = end + 1;
    }
    schema.validate(/*allow_missing_label=*/true);
    return schema;
}

std::string DatasetSchema::to_json_text() const {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& col : columns)
        cols.push_back({{"name", col.name}, {"type", role_name(col.role)}});
    return nlohmann::json{{"columns", cols}}.dump(2);
}

Dataset Dataset::select_rows(const std::vector<int>& rows) const {
    Dataset out;
    out.label_name = label_name;
    out.class_labels = class_labels;
    out.features.reserve(features.size());
    for (const auto& col : features) {
        FeatureColumn c;
        c.name = col.name;
        c.type = col.type;
        for (int r : rows) {
            if (col.type == ColumnRole::Numeric)
                c.numeric.push_back(col.numeric[static_cast<std::size_t>(r)]);
            else
                c.categories.push_back(col.categories[static_cast<std::size_t>(r)]);
        }
        out.features.push_back(std::move(c));
    }
    if (has_labels()) {
        out.label_codes.reserve(rows.size());
        for (int r : rows) out.label_codes.push_back(label_codes[static_cast<std::size_t>(r)]);
    }
    return out;
}

DatasetSchema Dataset::schema() const {
    DatasetSchema s;
    for (const auto& col : features) s.columns.push_back({col.name, col.type});
    if (has_labels()) s.columns.push_back({label_name, ColumnRole::Label});
    return s;
}

Dataset load_csv(const std::string& path, const DatasetSchema& schema) {
    schema.validate(/*allow_missing_label=*/true);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open dataset file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.empty()) throw EmptyFile("dataset file is empty: " + path);

    const auto records = parse_csv(text);
    if (records.empty()) throw EmptyFile("dataset file is empty: " + path);
    if (records.size() < 2) throw EmptyFile("dataset file has a header but no rows: " + path);

    const auto& header = records.front();
    if (header.size() != schema.columns.size())
        throw SchemaMismatch("header has " + std::to_string(header.size()) + " columns, schema declares " +
                             std::to_string(schema.columns.size()));
    for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] != schema.columns[j].name)
            throw SchemaMismatch("header column " + std::to_string(j + 1) + " is '" + header[j] +
                                 "', schema declares '" + schema.columns[j].name + "'");

    const int n = static_cast<int>(records.size()) - 1;
    const int label_col = schema.label_index();

    Dataset data;
    if (label_col >= 0) data.label_name = schema.columns[static_cast<std::size_t>(label_col)].name;
    for (const auto& col : schema.columns)
        if (col.role != ColumnRole::Label) data.features.push_back({col.name, col.role, {}, {}});

    std::unordered_map<std::string, int> label_ids;
    std::vector<std::vector<char>> missing(data.features.size());

    for (int r = 0; r < n; ++r) {
        const auto& record = records[static_cast<std::size_t>(r) + 1];
        if (record.size() != schema.columns.size())
            throw ParseError("row " + std::to_string(r + 2) + " has " + std::to_string(record.size()) +
                             " cells, expected " + std::to_string(schema.columns.size()));
        int f = 0;
        for (std::size_t j = 0; j < record.size(); ++j) {
            const auto& cell = record[j];
            const auto role = schema.columns[j].role;
            if (role == ColumnRole::Label) {
                if (is_missing(cell))
                    throw ParseError("missing label at row " + std::to_string(r + 2));
                auto [it, inserted] = label_ids.emplace(cell, static_cast<int>(data.class_labels.size()));
                if (inserted) data.class_labels.push_back(cell);
                data.label_codes.push_back(it->second);
                continue;
            }
            auto& col = data.features[static_cast<std::size_t>(f)];
            auto& miss = missing[static_cast<std::size_t>(f)];
            ++f;
            if (role == ColumnRole::Categorical) {
                col.categories.push_back(is_missing(cell) ? kMissingCategory : cell);
                continue;
            }
            if (is_missing(cell)) {
                col.numeric.push_back(0.0);  // patched with the column mean below
                miss.resize(static_cast<std::size_t>(n), 0);
                miss[static_cast<std::size_t>(r)] = 1;
                continue;
            }
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc{} || ptr != cell.data() + cell.size())
                throw ParseError("row " + std::to_string(r + 2) + ", column '" + schema.columns[j].name +
                                 "': cannot parse '" + cell + "' as a number");
            col.numeric.push_back(value);
        }
    }

    // numeric missing cells get the mean of the present values in the column
    for (std::size_t f = 0; f < data.features.size(); ++f) {
        auto& col = data.features[f];
        if (col.type != ColumnRole::Numeric || missing[f].empty()) continue;
        double sum = 0.0;
        int present = 0;
        for (int r = 0; r < n; ++r) {
            if (!missing[f][static_cast<std::size_t>(r)]) {
                sum += col.numeric[static_cast<std::size_t>(r)];
                ++present;
            }
        }
        const double mean = present > 0 ? sum / present : 0.0;
        for (int r = 0; r < n; ++r)
            if (missing[f][static_cast<std::size_t>(r)]) col.numeric[static_cast<std::size_t>(r)] = mean;
    }
    return data;
}

std::string to_csv(const Dataset& data) {
    const bool labelled = data.has_labels();
    std::string out;
    for (std::size_t j = 0; j < data.features.size(); ++j) {
        if (j) out += ',';
        csv_append_cell(out, data.features[j].name);
    }
    if (labelled) {
        out += ',';
        csv_append_cell(out, data.label_name);
    }
    out += '\n';
    for (int r = 0; r < data.n_rows(); ++r) {
        for (std::size_t j = 0; j < data.features.size(); ++j) {
            if (j) out += ',';
            const auto& col = data.features[j];
            if (col.type == ColumnRole::Numeric)
                out += format_double(col.numeric[static_cast<std::size_t>(r)]);
            else
                csv_append_cell(out, col.categories[static_cast<std::size_t>(r)]);
        }
        if (labelled) {
            out += ',';
            csv_append_cell(out, data.label_of(r));
        }
        out += '\n';
    }
    return out;
}

void write_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write dataset file: " + path);
    out << to_csv(data);
}

std::uint64_t dataset_checksum(const Dataset& data) {
    const std::string csv = to_csv(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : csv) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

Dataset gen_stagger(int n, int concept_id, std::uint64_t seed) {
    if (n < 1) throw Error("stagger generator needs n >= 1");
    if (concept_id < 1 || concept_id > 3)
        throw InvalidConcept("stagger concept must be 1, 2 or 3, got " + std::to_string(concept_id));

    static const std::vector<std::string> colors = {"green", "blue", "red"};
    static const std::vector<std::string> shapes = {"triangle", "circle", "rectangle"};
    static const std::vector<std::string> sizes = {"small", "medium", "large"};

    Dataset data;
    data.features = {{"color", ColumnRole::Categorical, {}, {}},
                     {"shape", ColumnRole::Categorical, {}, {}},
                     {"size", ColumnRole::Categorical, {}, {}}};
    data.class_labels = {"false", "true"};

    Rng rng(derive_seed(seed, 0));
    for (int r = 0; r < n; ++r) {
        const auto& color = colors[rng.below(3)];
        const auto& shape = shapes[rng.below(3)];
        const auto& size = sizes[rng.below(3)];
        bool label = false;
        switch (concept_id) {
            case 1: label = color == "red" && size == "small"; break;
            case 2: label = color == "green" || shape == "circle"; break;
            case 3: label = size == "medium" || size == "large"; break;
        }
        data.features[0].categories.push_back(color);
        data.features[1].categories.push_back(shape);
        data.features[2].categories.push_back(size);
        data.label_codes.push_back(label ? 1 : 0);
    }
    return data;
}

Dataset gen_hyperplane(int n, int d, double noise, std::uint64_t seed) {
    if (n < 1) throw Error("hyperplane generator needs n >= 1");
    if (d < 1) throw Error("hyperplane generator needs d >= 1");
    if (!(noise >= 0.0 && noise < 0.5))
        throw InvalidNoise("hyperplane noise must lie in [0, 0.5), got " + format_double(noise));

    // weights, points and flips come from separate child streams so the same
    // (n, d, seed) yields the same geometry under any noise level
    Rng w_rng(derive_seed(seed, 1));
    Rng x_rng(derive_seed(seed, 2));
    Rng flip_rng(derive_seed(seed, 3));

    std::vector<double> w(static_cast<std::size_t>(d));
    double w0 = 0.0;
    for (double& wi : w) {
        wi = w_rng.uniform();
        w0 += wi;
    }
    w0 *= 0.5;

    Dataset data;
    data.class_labels = {"neg", "pos"};
    data.features.resize(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        data.features[static_cast<std::size_t>(j)].name = "x" + std::to_string(j + 1);
        data.features[static_cast<std::size_t>(j)].type = ColumnRole::Numeric;
        data.features[static_cast<std::size_t>(j)].numeric.reserve(static_cast<std::size_t>(n));
    }
    for (int r = 0; r < n; ++r) {
        double dot = 0.0;
        for (int j = 0; j < d; ++j) {
            const double x = x_rng.uniform(-10.0, 10.0);
            data.features[static_cast<std::size_t>(j)].numeric.push_back(x);
            dot += w[static_cast<std::size_t>(j)] * x;
        }
        bool positive = dot >= w0;
        if (flip_rng.uniform() < noise) positive = !positive;
        data.label_codes.push_back(positive ? 1 : 0);
    }
    return data;
}

std::pair<Dataset, Dataset> split(const Dataset& data, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw Error("train fraction must lie strictly between 0 and 1");
    const int n = data.n_rows();
    Rng rng(derive_seed(spec.seed, 17));

    std::vector<int> train_idx, test_idx;
    auto cut = [&](const std::vector<int>& rows) {
        const int count = static_cast<int>(rows.size());
        const int take = static_cast<int>(std::floor(spec.train_fraction * count + 0.5));
        if (take < 1 || take >= count)
            throw TooSmallForSplit("cannot split " + std::to_string(count) +
                                   " rows at fraction " + format_double(spec.train_fraction));
        const auto order = shuffled_indices(rows, rng);
        train_idx.insert(train_idx.end(), order.begin(), order.begin() + take);
        test_idx.insert(test_idx.end(), order.begin() + take, order.end());
    };

    if (spec.stratified) {
        for (int c = 0; c < data.n_classes(); ++c) {
            std::vector<int> rows;
            for (int r = 0; r < n; ++r)
                if (data.label_codes[static_cast<std::size_t>(r)] == c) rows.push_back(r);
            if (!rows.empty()) cut(rows);
        }
    } else {
        std::vector<int> rows(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r) rows[static_cast<std::size_t>(r)] = r;
        cut(rows);
    }
    return {data.select_rows(train_idx), data.select_rows(test_idx)};
}

}  // namespace relm

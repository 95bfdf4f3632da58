#include "primorial/report.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "primorial/numeric.hpp"

namespace primlab {

std::optional<OutputFormat> parse_output_format(std::string_view s) noexcept
{
    if (s == "csv")
        return OutputFormat::csv;
    if (s == "json")
        return OutputFormat::json;
    if (s == "md")
        return OutputFormat::md;
    return std::nullopt;
}

void CheckReport::add(CheckDetail d)
{
    details.push_back(std::move(d));
}

void CheckReport::finalize()
{
    passed = std::all_of(details.begin(), details.end(), [](const CheckDetail& d) { return !d.asserted || d.ok; });
}

std::string csv_field(std::string_view s)
{
    if (s.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string(s);
    std::string out = "\"";
    for (const char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

namespace {

std::string emit_csv(const TextTable& t)
{
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                out += ',';
            out += csv_field(cells[i]);
        }
        out += "\r\n";
    };
    line(t.columns);
    for (const auto& r : t.rows)
        line(r);
    return out;
}

std::string emit_json(const TextTable& t)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < t.columns.size() && i < r.size(); ++i)
            obj[t.columns[i]] = r[i];
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

std::string emit_md(const TextTable& t)
{
    std::vector<std::size_t> width(t.columns.size(), 3);
    auto widen = [&width](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i)
            width[i] = std::max(width[i], cells[i].size());
    };
    widen(t.columns);
    for (const auto& r : t.rows)
        widen(r);

    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        os << '|';
        for (std::size_t i = 0; i < width.size(); ++i) {
            const std::string& c = i < cells.size() ? cells[i] : std::string();
            os << ' ' << c << std::string(width[i] - c.size(), ' ') << " |";
        }
        os << '\n';
    };
    line(t.columns);
    os << '|';
    for (const auto w : width)
        os << std::string(w + 2, '-') << '|';
    os << '\n';
    for (const auto& r : t.rows)
        line(r);
    return os.str();
}

}  // namespace

std::string emit(const TextTable& t, OutputFormat fmt)
{
    switch (fmt) {
    case OutputFormat::csv:
        return emit_csv(t);
    case OutputFormat::json:
        return emit_json(t);
    case OutputFormat::md:
        return emit_md(t);
    }
    return {};
}

std::string emit(const CheckReport& r, OutputFormat fmt, int digits)
{
    if (fmt == OutputFormat::json) {
        nlohmann::ordered_json j;
        j["check"] = r.check_name;
        j["passed"] = r.passed;
        j["max_residual"] = format_real(r.max_residual, digits);
        auto details = nlohmann::ordered_json::array();
        for (const auto& d : r.details) {
            nlohmann::ordered_json dj;
            dj["point"] = d.point;
            dj["value"] = format_real(d.value, digits);
            dj["bound"] = format_real(d.bound, digits);
            dj["ok"] = d.ok;
            dj["asserted"] = d.asserted;
            if (!d.note.empty())
                dj["note"] = d.note;
            details.push_back(std::move(dj));
        }
        j["details"] = std::move(details);
        j["notes"] = r.notes;
        return j.dump(2) + "\n";
    }

    TextTable t;
    t.columns = {"point", "value", "bound", "status", "note"};
    for (const auto& d : r.details) {
        const char* status = !d.asserted ? "reported" : (d.ok ? "ok" : "VIOLATED");
        t.rows.push_back({d.point, format_real(d.value, digits), format_real(d.bound, digits), status, d.note});
    }
    std::string out;
    if (fmt == OutputFormat::md) {
        out += "## " + r.check_name + ": " + (r.passed ? "PASS" : "FAIL") + " (max residual "
               + format_real(r.max_residual, digits) + ")\n\n";
        for (const auto& n : r.notes)
            out += "- " + n + "\n";
        if (!r.notes.empty())
            out += "\n";
        out += emit_md(t);
    } else {
        out += emit_csv(t);
    }
    return out;
}

}  // namespace primlab

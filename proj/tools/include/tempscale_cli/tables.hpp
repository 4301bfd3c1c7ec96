#pragma once

#include <string>
#include <vector>

namespace tempscale::cli {

struct TableCheck {
    std::string label;
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;

    bool pass() const;
};

struct TableReport {
    std::string title;
    std::vector<TableCheck> checks;

    bool pass() const;
    std::string format() const;
};

/// table1, table2, table3, table5, table6, table8.
const std::vector<std::string>& table_names();
/// Throws std::invalid_argument for an unknown name.
TableReport reproduce_table(const std::string& name);

}  // namespace tempscale::cli

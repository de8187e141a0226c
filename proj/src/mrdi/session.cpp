#include "mathrepro/mrdi/session.hpp"

namespace mathrepro::mrdi {

cas::FieldPtr Session::find_field(const std::string& uuid) const {
    auto it = fields_.find(uuid);
    return it == fields_.end() ? nullptr : it->second;
}

cas::RingPtr Session::find_ring(const std::string& uuid) const {
    auto it = rings_.find(uuid);
    return it == rings_.end() ? nullptr : it->second;
}

void Session::register_field(const std::string& uuid, cas::FieldPtr field) {
    fields_.emplace(uuid, std::move(field));
}

void Session::register_ring(const std::string& uuid, cas::RingPtr ring) {
    rings_.emplace(uuid, std::move(ring));
}

const std::string* Session::fragment_bytes(const std::string& uuid) const {
    auto it = fragment_bytes_.find(uuid);
    return it == fragment_bytes_.end() ? nullptr : &it->second;
}

void Session::remember_fragment(const std::string& uuid, std::string bytes) {
    fragment_bytes_.emplace(uuid, std::move(bytes));
}

void Session::add_warning(std::string message) {
    warnings_.push_back(std::move(message));
}

void Session::log_load(std::string entry) {
    load_log_.push_back(std::move(entry));
}

}  // namespace mathrepro::mrdi

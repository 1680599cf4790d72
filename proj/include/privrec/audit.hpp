#pragma once

// Photo-album audit: flags albums visible beyond the friends circle and
// renders the per-user report.

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "privrec/profile.hpp"
#include "privrec/ratio.hpp"

namespace privrec {

enum class Severity { PublicExposure, ExtendedExposure };

inline std::string_view to_string(Severity s) {
  return s == Severity::PublicExposure ? "PublicExposure" : "ExtendedExposure";
}

struct AuditFinding {
  std::string album_name;
  AlbumPrivacy privacy;
  Severity severity;

  friend bool operator==(const AuditFinding&, const AuditFinding&) = default;
};

// NETWORKS_FRIENDS is weak for the same reason FRIENDS_OF_FRIENDS is: the
// audience extends past the user's friends.
inline std::optional<Severity> severity_of(AlbumPrivacy p) {
  switch (p) {
    case AlbumPrivacy::Everyone: return Severity::PublicExposure;
    case AlbumPrivacy::FriendsOfFriends:
    case AlbumPrivacy::NetworksFriends: return Severity::ExtendedExposure;
    case AlbumPrivacy::Friends:
    case AlbumPrivacy::Custom: return std::nullopt;
  }
  return std::nullopt;
}

inline std::vector<AuditFinding> audit_albums(const std::vector<PhotoAlbum>& albums) {
  std::vector<AuditFinding> findings;
  for (const auto& a : albums) {
    if (auto s = severity_of(a.privacy)) findings.push_back({a.name, a.privacy, *s});
  }
  return findings;
}

struct VisibilityRatios {
  Ratio r_public;
  Ratio r_fof;
  Ratio r_friends;
  Ratio r_custom;
  Ratio r_networks;
  std::size_t total_albums = 0;
};

inline VisibilityRatios visibility_ratios(const AlbumSummary& s) {
  VisibilityRatios r;
  r.total_albums = s.total();
  if (r.total_albums == 0) return r;
  const auto total = static_cast<std::int64_t>(r.total_albums);
  auto ratio = [&](std::size_t n) { return Ratio(static_cast<std::int64_t>(n), total); };
  r.r_public = ratio(s.n_everyone());
  r.r_fof = ratio(s.n_fof());
  r.r_friends = ratio(s.n_friends());
  r.r_custom = ratio(s.n_custom());
  r.r_networks = ratio(s.n_networks());
  return r;
}

inline std::string_view audience_phrase(AlbumPrivacy p) {
  switch (p) {
    case AlbumPrivacy::Everyone: return "everyone (public)";
    case AlbumPrivacy::Friends: return "friends";
    case AlbumPrivacy::FriendsOfFriends: return "friends of friends";
    case AlbumPrivacy::NetworksFriends: return "networks and friends";
    case AlbumPrivacy::Custom: return "a custom list";
  }
  return "";
}

inline std::string render_report(const std::vector<AuditFinding>& findings, std::string_view user_name) {
  std::ostringstream os;
  os << "Photo album privacy check for " << user_name << "\n";
  if (findings.empty()) {
    os << "No weak albums found: every album is limited to friends or a custom list.\n";
    return os.str();
  }
  os << "Found " << findings.size() << (findings.size() == 1 ? " album" : " albums")
     << " with weak privacy settings:\n";
  for (const auto& f : findings) {
    os << "  - \"" << f.album_name << "\" is visible to " << audience_phrase(f.privacy) << " ["
       << to_string(f.privacy) << "]: tighten to FRIENDS or CUSTOM\n";
  }
  os << "Recommendation: tighten the privacy setting of the albums listed above to reduce potential privacy "
        "breaches.\n";
  return os.str();
}

inline nlohmann::json report_to_json(const std::vector<AuditFinding>& findings, std::string_view user_id,
                                     std::string_view user_name) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& f : findings) {
    items.push_back({{"album_name", f.album_name},
                     {"privacy", to_string(f.privacy)},
                     {"severity", to_string(f.severity)}});
  }
  return {{"user_id", user_id}, {"user_name", user_name}, {"findings", items}};
}

}  // namespace privrec

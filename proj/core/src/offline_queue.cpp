#include "mts/offline_queue.hpp"

#include <cstring>
#include <fstream>

#include "mts/crc32c.hpp"
#include "mts/wire.hpp"

namespace mts {

namespace {

constexpr char kTrailerMagic[4] = {'M', 'T', 'S', 'Q'};
constexpr std::size_t kTrailerSize = 8;

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error(errc::io_failure, "cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::uint8_t> make_trailer(std::uint32_t crc) {
    std::vector<std::uint8_t> t;
    t.insert(t.end(), kTrailerMagic, kTrailerMagic + 4);
    wire::put_u32le(t, crc);
    return t;
}

} // namespace

OfflineQueue::OfflineQueue(std::size_t capacity, std::string spill_path)
    : capacity_(capacity), spill_path_(std::move(spill_path)) {
    if (capacity_ < 1)
        throw error(errc::invalid_config, "queue capacity must be >= 1");
    if (!spill_path_.empty())
        reset_spill();
}

OfflineQueue::~OfflineQueue() = default;

EnqueueOutcome OfflineQueue::enqueue(std::vector<std::uint8_t> frame) {
    std::lock_guard lock(mu_);
    if (!spill_path_.empty())
        append_spill(frame);
    return enqueue_locked(std::move(frame));
}

EnqueueOutcome OfflineQueue::enqueue_locked(std::vector<std::uint8_t> frame) {
    ParsedFrame parsed = parse_frame(frame, 0);
    entries_.push_back(Entry{std::move(frame), parsed.kind, parsed.seq});

    EnqueueOutcome outcome;
    if (entries_.size() <= capacity_)
        return outcome;

    // the oldest frame ages out unless it is the most recent FULL with
    // DELTAs queued after it; then the oldest of those DELTAs goes instead
    auto victim = entries_.begin();
    if (victim->kind == frame_kind::full) {
        std::size_t last_full = 0;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].kind == frame_kind::full)
                last_full = i;
        bool delta_after = false;
        for (std::size_t i = last_full + 1; i < entries_.size(); ++i)
            if (entries_[i].kind == frame_kind::delta)
                delta_after = true;
        if (last_full == 0 && delta_after) {
            for (auto it = entries_.begin(); it != entries_.end(); ++it) {
                if (it->kind == frame_kind::delta) {
                    victim = it;
                    break;
                }
            }
        }
    }

    outcome.evicted = true;
    outcome.evicted_kind = victim->kind;
    outcome.evicted_seq = victim->seq;
    entries_.erase(victim);
    return outcome;
}

std::vector<std::vector<std::uint8_t>> OfflineQueue::drain() {
    std::lock_guard lock(mu_);
    if (!spill_path_.empty()) {
        verify_spill();
        reset_spill();
    }
    std::vector<std::vector<std::uint8_t>> out;
    out.reserve(entries_.size());
    for (auto& e : entries_)
        out.push_back(std::move(e.bytes));
    entries_.clear();
    return out;
}

std::size_t OfflineQueue::size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
}

void OfflineQueue::append_spill(const std::vector<std::uint8_t>& frame) {
    std::vector<std::uint8_t> record;
    wire::put_u32le(record, static_cast<std::uint32_t>(frame.size()));
    record.insert(record.end(), frame.begin(), frame.end());
    spill_crc_ = crc32c(record, spill_crc_);

    auto trailer = make_trailer(spill_crc_);
    std::fstream out(spill_path_, std::ios::binary | std::ios::in | std::ios::out);
    if (!out)
        throw error(errc::io_failure, "cannot open spill file " + spill_path_);
    out.seekp(static_cast<std::streamoff>(spill_content_size_));
    out.write(reinterpret_cast<const char*>(record.data()),
              static_cast<std::streamsize>(record.size()));
    out.write(reinterpret_cast<const char*>(trailer.data()),
              static_cast<std::streamsize>(trailer.size()));
    out.flush();
    if (!out)
        throw error(errc::io_failure, "cannot append to spill file " + spill_path_);
    spill_content_size_ += record.size();
}

void OfflineQueue::verify_spill() const {
    std::vector<std::uint8_t> all = read_file(spill_path_);
    if (all.size() < kTrailerSize)
        throw error(errc::spill_corruption, "spill file shorter than its trailer");
    std::span<const std::uint8_t> content(all.data(), all.size() - kTrailerSize);
    const std::uint8_t* trailer = all.data() + content.size();
    if (std::memcmp(trailer, kTrailerMagic, 4) != 0)
        throw error(errc::spill_corruption, "spill trailer magic missing");
    std::uint32_t expect = 0;
    for (int i = 0; i < 4; ++i)
        expect |= static_cast<std::uint32_t>(trailer[4 + i]) << (8 * i);
    if (crc32c(content) != expect)
        throw error(errc::spill_corruption, "spill checksum mismatch");
}

void OfflineQueue::reset_spill() {
    spill_crc_ = crc32c({});
    spill_content_size_ = 0;
    auto trailer = make_trailer(spill_crc_);
    std::ofstream out(spill_path_, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(reinterpret_cast<const char*>(trailer.data()),
                           static_cast<std::streamsize>(trailer.size())))
        throw error(errc::io_failure, "cannot reset spill file " + spill_path_);
}

std::unique_ptr<OfflineQueue> OfflineQueue::recover(std::size_t capacity,
                                                    const std::string& spill_path) {
    std::vector<std::uint8_t> all = read_file(spill_path);
    if (all.size() < kTrailerSize)
        throw error(errc::spill_corruption, "spill file shorter than its trailer");
    std::span<const std::uint8_t> content(all.data(), all.size() - kTrailerSize);
    const std::uint8_t* trailer = all.data() + content.size();
    if (std::memcmp(trailer, kTrailerMagic, 4) != 0)
        throw error(errc::spill_corruption, "spill trailer magic missing");
    std::uint32_t expect = 0;
    for (int i = 0; i < 4; ++i)
        expect |= static_cast<std::uint32_t>(trailer[4 + i]) << (8 * i);
    if (crc32c(content) != expect)
        throw error(errc::spill_corruption, "spill checksum mismatch");

    auto q = std::make_unique<OfflineQueue>(capacity, spill_path);
    wire::reader in(content);
    while (!in.eof()) {
        try {
            std::uint32_t len = in.get_u32le();
            auto bytes = in.get_bytes(len);
            q->enqueue(std::vector<std::uint8_t>(bytes.begin(), bytes.end()));
        } catch (const error& e) {
            if (e.code() == errc::truncated_frame)
                throw error(errc::spill_corruption, "spill record truncated");
            throw;
        }
    }
    return q;
}

} // namespace mts

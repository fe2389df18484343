#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "mts/codec.hpp"

namespace mts {

/// Outcome of an enqueue: the frame was accepted, and possibly another frame
/// was evicted to make room.
struct EnqueueOutcome {
    bool evicted = false;
    frame_kind evicted_kind = frame_kind::delta;
    std::uint64_t evicted_seq = 0;
};

/// Bounded store-and-forward buffer for encoded frames, durably mirrored to
/// an append-only spill file so a disconnected agent survives restarts.
///
/// Overflow policy: the oldest frame ages out, except that the most recent
/// FULL frame is never dropped while any later DELTA remains queued (it is
/// the baseline those DELTAs decode against); in that case the oldest DELTA
/// after it goes instead. Superseded FULL frames age out like any other
/// frame, so with capacity >= snapshot interval the queue converges on the
/// newest FULL-anchored run, which decodes cleanly via resync_from_full.
///
/// Spill layout: [u32le length | frame bytes]* followed by the trailer
/// "MTSQ" + u32le CRC32C over everything before it. Records are appended in
/// place (the trailer is rewritten); the file is emptied at drain. Eviction
/// is logical and re-applied when a spill is recovered. One producer and one
/// consumer may run concurrently.
class OfflineQueue {
public:
    /// In-memory queue mirrored to `spill_path`; empty path disables the
    /// spill file.
    OfflineQueue(std::size_t capacity, std::string spill_path = {});
    ~OfflineQueue();

    OfflineQueue(const OfflineQueue&) = delete;
    OfflineQueue& operator=(const OfflineQueue&) = delete;

    EnqueueOutcome enqueue(std::vector<std::uint8_t> frame);

    /// Returns and clears all queued frames in FIFO order, emptying the
    /// spill file. Throws SpillCorruption if the spill checksum fails.
    std::vector<std::vector<std::uint8_t>> drain();

    std::size_t size() const;
    std::size_t capacity() const { return capacity_; }

    /// Rebuilds a queue from an existing spill file, re-applying the
    /// eviction policy. Throws SpillCorruption on checksum mismatch.
    static std::unique_ptr<OfflineQueue> recover(std::size_t capacity,
                                                 const std::string& spill_path);

private:
    struct Entry {
        std::vector<std::uint8_t> bytes;
        frame_kind kind;
        std::uint64_t seq;
    };

    EnqueueOutcome enqueue_locked(std::vector<std::uint8_t> frame);
    void append_spill(const std::vector<std::uint8_t>& frame);
    void verify_spill() const;
    void reset_spill();

    std::size_t capacity_;
    std::string spill_path_;
    std::deque<Entry> entries_;
    std::size_t spill_content_size_ = 0; // bytes before the trailer
    std::uint32_t spill_crc_ = 0;        // running CRC32C of the content
    mutable std::mutex mu_;
};

} // namespace mts

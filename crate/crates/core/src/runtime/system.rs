//! Single-threaded multi-agent driver: agents step in round-robin order and
//! exchange messages through mailboxes only.

use super::{AgentRuntime, CycleReport, Environment, RuntimeError};

pub struct System<E: Environment> {
    pub agents: Vec<AgentRuntime>,
    pub env: E,
    /// Messages addressed to nonexistent agents, counted rather than fatal.
    pub unknown_receivers: u64,
}

impl<E: Environment> System<E> {
    pub fn new(agents: Vec<AgentRuntime>, env: E) -> System<E> {
        System {
            agents,
            env,
            unknown_receivers: 0,
        }
    }

    pub fn agent(&self, name: &str) -> Option<&AgentRuntime> {
        self.agents.iter().find(|a| a.name == name)
    }

    pub fn agent_mut(&mut self, name: &str) -> Option<&mut AgentRuntime> {
        self.agents.iter_mut().find(|a| a.name == name)
    }

    /// Runs one cycle for every agent in order. Outgoing messages are routed
    /// after the sender's cycle, so receivers see them at their next cycle
    /// start.
    pub fn step_round(&mut self) -> Result<Vec<CycleReport>, RuntimeError> {
        let mut reports = Vec::with_capacity(self.agents.len());
        for i in 0..self.agents.len() {
            let report = {
                let System { agents, env, .. } = self;
                agents[i].reasoning_cycle(env)?
            };
            for msg in &report.outgoing {
                match self.agents.iter_mut().find(|a| a.name == msg.to) {
                    Some(receiver) => receiver.post_message(msg.clone()),
                    None => self.unknown_receivers += 1,
                }
            }
            reports.push(report);
        }
        Ok(reports)
    }

    /// True while any agent still has queued events or a suspended intention.
    pub fn has_work(&self) -> bool {
        self.agents.iter().any(AgentRuntime::has_work)
    }
}

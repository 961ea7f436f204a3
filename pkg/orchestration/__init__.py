"""Orchestration package"""
